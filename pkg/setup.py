from setuptools import find_packages, setup

setup(
    name="operadkit",
    version="1.0.0",
    description="Groebner bases, Veronese powers and Koszul duals of weight-graded operads",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"operadkit.presets": ["data/*.oprd"]},
    python_requires=">=3.9",
    install_requires=[
        "pydantic==2.5.2",
        "pydantic-settings==2.1.0",
        "python-dotenv==1.0.0",
        "sympy==1.12",
    ],
    extras_require={"test": ["pytest==7.4.3"]},
    entry_points={"console_scripts": ["operadkit=operadkit.main:main"]},
)
