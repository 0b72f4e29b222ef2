from setuptools import setup, find_packages

setup(
    name="branch_width",
    version="0.1.0",
    description="Branch-width of subspace arrangements over finite fields, with rank-width, carving-width and hypergraph frontends",
    author="Gopi Hombal",
    author_email="gopi.hombal@email.com",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=[
        "numpy>=2.0",
        "pydantic>=2.0",
        "pydantic-settings>=2.0",
        "PyYAML",
        "python-dotenv",
        "click>=8.0",
        "networkx>=3.0",
    ],
    entry_points={
        "console_scripts": [
            "branchwidth=branchwidth.cli:cli",
        ],
    },
    python_requires=">=3.10",
    include_package_data=True,
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
    ],
)
