import pathlib
from setuptools import setup

HERE = pathlib.Path(__file__).parent

README = (HERE / "README.md").read_text()

setup(
    name="padiz",
    version="0.1.0",
    description="p-adic Potts-Bethe dynamics, Julia sets and periodic p-adic Gibbs measures",
    long_description=README,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
    ],
    packages=["padiz"],
    test_suite='pytest',
    tests_require=['pytest'],
    include_package_data=True,
    install_requires=["sortedcontainers", "numpy", "scipy"],
    entry_points={
        "console_scripts": [
            "padiz=padiz.__main__:main",
        ]
    },
)
