from setuptools import setup, find_packages

setup(
    name="gorenstein_defect_toolkit",
    version="0.1.0",
    packages=find_packages(include=["src", "src.*"]),
    install_requires=[
        'numpy',
        'networkx',
        'sympy',
        'psutil',
    ],
    description="Exact Gorenstein projective, idempotent reduction and triangular matrix checks over prime fields",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.9',
    extras_require={
        'test': [
            'pytest>=6.0',
            'pytest-cov>=2.0',
            'pytest-mock>=3.0',
        ],
    },
)
