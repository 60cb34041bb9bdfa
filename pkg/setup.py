from setuptools import find_packages, setup
setup(
    name='dp2-brane-tiling',
    version='0.1.0',
    description='Toric cluster variables of the dP2 quiver as perfect matchings of its brane tiling',
    extras_require=dict(tests=['pytest', 'hypothesis']),
    install_requires=['PyYAML', 'numpy', 'pandas', 'networkx', 'drawsvg'],
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={'dp2_cluster': ['config.yaml', 'data/*.json', 'data/cases/*.json']},
    entry_points={'console_scripts': ['dp2=dp2_cluster.cli:main']},
    python_requires='>=3.8',
)
