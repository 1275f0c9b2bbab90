from setuptools import find_packages, setup

setup(
    name='orthotest',
    version='0.1.0',
    description='Rectilinear planarity testing of degree-4 partial 2-trees',
    packages=find_packages(exclude=['tests']),
    python_requires='>=3.6',
    install_requires=[
        'networkx',
        'numpy',
        'pandas',
        'python-dotenv',
        'tqdm',
    ],
    extras_require={'test': ['pytest', 'hypothesis']},
    entry_points={'console_scripts': ['orthotest=orthotest.cli:main']},
)
