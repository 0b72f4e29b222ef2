# src/branchwidth/namu/sums.py
"""All sums of two B-namus.

Host trees are built top-down from the image of the first leaf of the first
pattern. While descending, each host edge carries the part of either pattern
still to be placed below it:

* ``("above", i, x, parent)``: pattern i's subtree at x seen from parent,
  with the host edge on the path subdividing (parent, x);
* ``("entry", p, q)``: the second pattern not yet entered; it will enter
  at a subdividing node of its edge pq;
* ``("lone", a)``: the second pattern is the single node a.

``plant`` places one pattern piece alone, ``merge`` places a piece of the
first pattern together with one of the second. Every host node of degree at
most 2 is a branch node of exactly one pattern, and patterns only meet
foreign edges at their subdividing nodes, so these two recursions produce
every pair model.
"""
import logging
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Tuple

from branchwidth.bdtree.tree import edge_key
from branchwidth.exceptions import AmbientMismatch, ResourceExceeded
from branchwidth.linalg import dim_intersect, subspace_sum
from branchwidth.namu.core import BNamu
from branchwidth.namu.models import PairModel, TreeModel, model_incidences

logger = logging.getLogger(__name__)

DEFAULT_CAP = 64

Piece = tuple
Label = Optional[Tuple[int, int]]
# (image in pattern 1, image in pattern 2, ((label 1, label 2, child), ...))
HostNode = Tuple[Optional[int], Optional[int], tuple]


def sum_size(n1: int, n2: int) -> int:
    """Node count of every host tree for patterns with n1 and n2 nodes"""
    if n1 >= 2 and n2 >= 2:
        return n1 + n2 + 2
    if n1 == 1 and n2 == 1:
        return 2
    return n1 + n2 + 1


def enumerate_sums(a: BNamu, b: BNamu, cap: int = DEFAULT_CAP) -> List[Tuple[BNamu, PairModel]]:
    """Every sum of a and b up to isomorphism, each with one pair model producing it"""
    if a.ambient != b.ambient:
        raise AmbientMismatch("summed namus live over different ambient spaces")
    size = sum_size(a.size, b.size)
    if size > cap:
        raise ResourceExceeded(cap, where=f"sum of {a.size}- and {b.size}-node namus")

    hosts = _host_shapes(a, b)
    seen = set()
    results: List[Tuple[BNamu, PairModel]] = []
    for shape in hosts:
        g, model = _realize(a, b, shape)
        if g.key in seen:
            continue
        seen.add(g.key)
        results.append((g, model))
    logger.debug(f"{len(hosts)} host shapes gave {len(results)} distinct sums of {a!r} and {b!r}")
    return results


def _children(g: BNamu, x: int, parent: Optional[int]) -> Tuple[int, ...]:
    return tuple(w for w in g.neighbors(x) if w != parent)


def _host_shapes(a: BNamu, b: BNamu) -> List[HostNode]:
    pats = {1: a, 2: b}

    def label(piece: Piece) -> Label:
        if piece[0] == "above":
            return (piece[3], piece[2])
        return None

    def labels(i: int, lab: Label) -> Tuple[Label, Label]:
        return (lab, None) if i == 1 else (None, lab)

    def image(i: int, x: int) -> Tuple[Optional[int], Optional[int]]:
        return (x, None) if i == 1 else (None, x)

    def combine(img: Tuple[Optional[int], Optional[int]], options) -> List[HostNode]:
        """options: per child, (label 1, label 2, alternatives)"""
        shapes = []
        for picked in product(*[alts for _, _, alts in options]):
            kids = tuple((l1, l2, child) for (l1, l2, _), child in zip(options, picked))
            shapes.append((img[0], img[1], kids))
        return shapes

    @lru_cache(maxsize=None)
    def plant(piece: Piece) -> List[HostNode]:
        if piece[0] == "lone":
            return [(None, piece[1], ())]
        if piece[0] == "entry":
            _, p, q = piece
            return combine(
                (None, None),
                [(None, (q, p), plant(("above", 2, p, q))), (None, (p, q), plant(("above", 2, q, p)))],
            )
        _, i, x, parent = piece
        options = [labels(i, (x, c)) + (plant(("above", i, c, x)),) for c in _children(pats[i], x, parent)]
        return combine(image(i, x), options)

    @lru_cache(maxsize=None)
    def merge(q1: Piece, q2: Piece) -> List[HostNode]:
        shapes: List[HostNode] = []
        _, _, x, px = q1
        kids1 = _children(a, x, px)
        lab1, lab2 = label(q1), label(q2)

        # the two pieces part ways at a subdividing node of both
        shapes += combine((None, None), [(lab1, None, plant(q1)), (None, lab2, plant(q2))])

        # branch node of the first pattern, the second continues into one child
        if kids1:
            for c in kids1:
                options = []
                for c2 in kids1:
                    if c2 == c:
                        options.append(((x, c2), lab2, merge(("above", 1, c2, x), q2)))
                    else:
                        options.append(((x, c2), None, plant(("above", 1, c2, x))))
                shapes += combine((x, None), options)

        # branch or entry node of the second pattern, the first continues into one child
        if q2[0] == "above":
            _, _, y, py = q2
            kids2 = _children(b, y, py)
            if kids2:
                for d in kids2:
                    options = []
                    for d2 in kids2:
                        if d2 == d:
                            options.append((lab1, (y, d2), merge(q1, ("above", 2, d2, y))))
                        else:
                            options.append((None, (y, d2), plant(("above", 2, d2, y))))
                    shapes += combine((None, y), options)
            sides = [(d, (y, d)) for d in kids2] if len(kids2) == 2 else []
            img2 = y
        elif q2[0] == "entry":
            _, p, q = q2
            sides = [(p, (q, p)), (q, (p, q))]
            halves = {p: q, q: p}
            for d, lab in sides:
                other = [s for s in sides if s[0] != d][0]
                shapes += combine(
                    (None, None),
                    [
                        (lab1, lab, merge(q1, ("above", 2, d, halves[d]))),
                        (None, other[1], plant(("above", 2, other[0], halves[other[0]]))),
                    ],
                )
            img2 = None
        else:
            sides = []
            img2 = None

        # both patterns branch at the same node, children paired up
        if len(kids1) == 2 and len(sides) == 2:
            for first, second in (sides, sides[::-1]):
                options = []
                for c, (d, lab) in zip(kids1, (first, second)):
                    parent2 = lab[0]
                    options.append(((x, c), lab, merge(("above", 1, c, x), ("above", 2, d, parent2))))
                shapes += combine((x, img2), options)
        return shapes

    if b.is_single():
        seconds: List[Piece] = [("lone", b.nodes[0])]
    else:
        seconds = [("entry", p, q) for p, q in b.edges]

    if a.is_single():
        a1 = a.nodes[0]
        return [(a1, None, ((None, None, s),)) for piece in seconds for s in plant(piece)]
    a1 = a.leaves()[0]
    nb = a.neighbors(a1)[0]
    return [(a1, None, (((a1, nb), None, s),)) for piece in seconds for s in merge(("above", 1, nb, a1), piece)]


def _realize(a: BNamu, b: BNamu, shape: HostNode) -> Tuple[BNamu, PairModel]:
    """Number a host shape and decorate it with the sum formulas"""
    adjacency: Dict[int, List[int]] = {}
    labels = ({}, {})
    branch = ({}, {})

    def visit(node: HostNode, parent: Optional[int], edge_labels) -> None:
        h = len(adjacency)
        adjacency[h] = []
        if parent is not None:
            adjacency[parent].append(h)
            adjacency[h].append(parent)
            for i, lab in enumerate(edge_labels):
                if lab is not None:
                    upper, lower = lab
                    labels[i][(parent, h)] = (upper, lower)
                    labels[i][(h, parent)] = (lower, upper)
        for i, img in enumerate(node[:2]):
            if img is not None:
                branch[i][img] = h
        for l1, l2, child in node[2]:
            visit(child, h, (l1, l2))

    visit(shape, None, (None, None))
    host = {h: tuple(sorted(ns)) for h, ns in adjacency.items()}
    first = TreeModel(branch[0], model_incidences(host, labels[0], branch[0]))
    second = TreeModel(branch[1], model_incidences(host, labels[1], branch[1]))
    model = PairModel(host, first, second)
    return sum_namu(a, b, model), model


def sum_namu(a: BNamu, b: BNamu, model: PairModel) -> BNamu:
    """The sum of a and b along a pair model"""
    alpha = {}
    lam = {}
    meet_u = dim_intersect(a.universe, b.universe)
    for h, ns in model.host.items():
        for h2 in ns:
            alpha[(h, h2)] = subspace_sum(
                a.a(model.first.incidence[(h, h2)]), b.a(model.second.incidence[(h, h2)])
            )
    for h, ns in model.host.items():
        for h2 in ns:
            if h2 < h:
                continue
            value = meet_u
            for g, m in ((a, model.first), (b, model.second)):
                e = m.edge_of(h, h2)
                if e is not None:
                    value += g.lam[e]
            for end, other in ((h, h2), (h2, h)):
                value -= dim_intersect(
                    a.a(model.first.incidence[(end, other)]), b.a(model.second.incidence[(end, other)])
                )
            lam[edge_key(h, h2)] = value
    return BNamu.build(model.host, alpha, lam, subspace_sum(a.universe, b.universe), a.ambient)
