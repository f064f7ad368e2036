from setuptools import setup, find_packages

# Read the contents of README file
from pathlib import Path
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding='utf-8')

setup(
    name="kasner-resonance",
    version="0.3.0",
    author="Kasner Resonance Team",
    description="Takens-linearization admissibility checks for periodic Bianchi IX heteroclinic chains",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "pandas>=2.0",
        "jinja2>=3.1",
        "pyyaml>=6.0",
        "pydantic>=2.0",
        "psutil>=5.9",
        "sympy>=1.12",
        "mpmath>=1.3",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "hypothesis>=6.80",
            "numpy>=1.23",
            "ruff>=0.1",
            "mypy>=1.0",
        ],
        "perf": [
            "joblib>=1.3",
        ],
    },
    entry_points={
        "console_scripts": [
            "kasner-resonance=kasner_resonance.cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "kasner_resonance": ["templates/*.j2", "data/*.yaml"],
    },
    zip_safe=False,
)
