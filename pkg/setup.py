from pathlib import Path

from setuptools import find_packages, setup

__version__ = "0.1.0"

here = Path(__file__).parent.resolve()

# Get the long description from the README file
with (here / "README.md").open(encoding="utf-8") as file:
    long_description = file.read()

setup(
    name="wywitness",
    version=__version__,
    description=(
        "Entanglement detection with skew-information uncertainty relations "
        "on the partial transpose."
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords="entanglement skew-information uncertainty partial-transpose quantum",
    license="MIT",
    entry_points={"console_scripts": ["wywitness = wywitness:cli"]},
    packages=find_packages(exclude=["docs", "tests*", "scripts"]),
    include_package_data=True,
    python_requires=">=3.8",
    install_requires=["numpy>=1.17"],
    author="wywitness contributors",
    tests_require=[
        "black",
        "flake8",
        "hypothesis",
        "isort",
        "mypy",
        "pytest",
        "pytest-cov",
    ],
    author_email="",
)
