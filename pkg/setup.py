"""
Setup script for the type-2 convolution toolkit.
"""

from setuptools import setup
from pathlib import Path

# Read README
readme_file = Path(__file__).parent / "README.md"
long_description = readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""

# Read requirements
requirements_file = Path(__file__).parent / "requirements.txt"
requirements = []
if requirements_file.exists():
    requirements = requirements_file.read_text(encoding="utf-8").strip().split('\n')
    requirements = [req.strip() for req in requirements if req.strip() and not req.startswith('#')]

setup(
    name="t2conv",
    version="1.0.0",
    description="Convolution of fuzzy truth values under pairs of t-norms",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=[
        "main",
        "cli",
        "config",
        "logger_config",
        "data_processor",
        "tnorms",
        "truth_value",
        "interval_cuts",
        "convolution",
        "order",
        "harness",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        'test': ['pytest>=7.0', 'hypothesis>=6.70'],
    },
    entry_points={
        'console_scripts': [
            't2conv=main:main',
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    keywords="fuzzy logic type-2 fuzzy sets t-norm convolution alpha-cuts",
)
