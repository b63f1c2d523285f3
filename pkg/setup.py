# coding=utf-8
from setuptools import setup

setup(
    name='PauliClock',
    version='0.1',
    packages=['core', 'config', 'scenarios', 'misc'],
    package_data={'config': ['*.ini']},
    license='GPLv2',
    description='PauliClock simulates relational time: a clock history state, the constraint operator built from a '
                'self-adjoint time operator, its Weyl sequences and finite-bandwidth clocks.',
    install_requires=['numpy>=1.20', 'scipy>=1.6'],
    extras_require={
        'tests': ['pytest>=7.0'],
        'docs': ['sphinx', 'sphinx_rtd_theme'],
    },
    entry_points={
        'console_scripts': ['pauliclock = core.cli:main'],
    },
    python_requires='>=3.8',
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
    ]
)
