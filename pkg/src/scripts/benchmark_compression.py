# src/scripts/benchmark_compression.py
import logging
import sys
import time
from pathlib import Path

import numpy as np

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from branchwidth.config import settings
from branchwidth.exceptions import AboveK, RejectedAboveK
from branchwidth.field import GF2
from branchwidth.fullset import decompose
from branchwidth.linalg import Mat

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PARTS = 24
K = 2
ROWS = PARTS // 2 + 1
SEED = 7
TIME_LIMIT = 120.0


def banded_lines(rng: np.random.Generator) -> np.ndarray:
    """Random lines, the j-th supported on coordinates j//2 and j//2 + 1, in shuffled order.

    Any cut of the band order meets in at most two coordinates, so the
    branch-width is at most 2.
    """
    data = np.zeros((ROWS, PARTS), dtype=np.int64)
    for j in range(PARTS):
        data[j // 2: j // 2 + 2, j] = rng.integers(0, 2, size=2)
    return data[:, rng.permutation(PARTS)]


def benchmark_compression():
    """Random banded GF(2) arrangement of one-dimensional parts solved at k=2"""
    try:
        rng = np.random.default_rng(SEED)
        mat = Mat(banded_lines(rng), GF2)
        records = []
        logger.info(f"Solving {PARTS} lines in GF(2)^{ROWS} at k={K}")

        start = time.perf_counter()
        try:
            tree = decompose(mat, [1] * PARTS, K, records=records)
            outcome = f"width <= {K}: {tree.postorder_string()}"
        except (AboveK, RejectedAboveK) as e:
            outcome = f"width > {K} ({e})"
        elapsed = time.perf_counter() - start

        largest = max(records, key=lambda r: r.size, default=None)

        print("\n" + "="*50)
        print("COMPRESSION BENCHMARK SUMMARY")
        print("="*50)
        print(f"Parts: {PARTS}, k: {K}, seed: {SEED}")
        print(f"Outcome: {outcome}")
        print(f"Elapsed: {elapsed:.1f}s (limit {TIME_LIMIT:.0f}s)")
        print(f"Tables traced: {len(records)}")
        if largest is not None:
            print(f"Largest table: {largest.line()}")
            print(f"Table warning threshold: {settings.solver.table_warning}")
        print("="*50)

        if elapsed > TIME_LIMIT:
            logger.warning(f"Benchmark took {elapsed:.1f}s, above the {TIME_LIMIT:.0f}s gate")
        if largest is not None and largest.size > settings.solver.table_warning:
            logger.warning(f"Largest table holds {largest.size} namus")

    except Exception as e:
        logger.error(f"Benchmark failed: {e}")
        raise


if __name__ == "__main__":
    benchmark_compression()
