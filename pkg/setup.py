from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="bf-causal-toolkit",
    version="1.0.0",
    author="Your Name",
    author_email="your.email@example.com",
    description="Basis-function BIC and likelihood-ratio causal discovery (BOSS, PC-Max) for mixed data",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/bf-causal-toolkit",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Information Analysis"
    ],
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.19.0",
        "pandas>=1.5.0",
        "scipy>=1.5.0",
        "networkx>=3.3",
    ],
    extras_require={
        "plot": ["matplotlib>=3.3.0"],
    },
    entry_points={
        "console_scripts": [
            "bfcausal=bfcausal_toolkit.cli:main",
        ],
    },
)
