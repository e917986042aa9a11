import codecs
from os.path import abspath, dirname, join

import setuptools


def read(*parts):
    """Read a file in this repository."""
    here = abspath(dirname(__file__))
    with codecs.open(join(here, *parts), 'r') as file_:
        return file_.read()


setuptools.setup(
    name='afasim',
    use_scm_version=True,
    description='Affine and probabilistic finite automata over exact rationals',
    long_description=read('README.md'),
    long_description_content_type='text/markdown',
    author='afasim contributors',
    package_dir={"": 'src'},
    package_data={'afasim': ['data/*.txt']},
    packages=setuptools.find_packages('src'),
    python_requires='>=3.9,<4',
    setup_requires=[
        'setuptools_scm >= 3.3',
    ],
    install_requires=[
        'attrs',
        'gmpy2 >= 2.2',
        'importlib-resources',
    ],
    extras_require={
        'test': ['hypothesis', 'pytest'],
    },
    entry_points={
        'console_scripts': ['afasim = afasim.cli:main'],
    },
    classifiers=[
        'Intended Audience :: Science/Research',
        'Development Status :: 3 - Alpha',
        'Operating System :: OS Independent',
        'License :: OSI Approved :: MIT License',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
