from setuptools import setup, find_packages

setup(
    name="Prob Taylor",
    version="0.1",
    author="Yeabwang",
    email="yeabsira.tesfaye@bit.edu.cn",
    packages=find_packages(exclude=["tests"]),
    install_requires=["lark", "from_root", "PyYAML", "python-dotenv", "rich"],
    package_data={"": ["*.yaml"]},
    entry_points={"console_scripts": ["prob-taylor=PROB_TAYLOR.cli:main"]},
)
