from setuptools import setup, find_packages

setup(
    name="afmpi",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={
        "afmpi": ["templates/*.txt"],
        "afmpi.schemes": ["data/*.json"],
        "afmpi.synthgen": ["data/*.json"],
    },
    python_requires=">=3.10",
    install_requires=[
        "click>=8.2",
        "python-dotenv",
        "pydantic>=2",
        "jinja2",
        "numpy",
        "pandas>=2",
        "scipy",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points="""
        [console_scripts]
        afmpi=afmpi.cli:cli
    """,
)
