from setuptools import setup, find_packages

setup(
    name='lamplighter-automata',
    version='0.1.0',
    description='Mealy automata of rational series over finite rings and their lamplighter groups',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    packages=find_packages(where='src'),
    package_dir={'': 'src'},
    install_requires=[
        'tqdm>=4.64.0',    # For progress bars
        'python-dotenv',   # For environment configuration
        'sympy>=1.9',      # For primality, factorisation and polynomials mod p
        'graphviz>=0.20',  # For DOT emission
    ],
    entry_points={
        'console_scripts': [
            'lamplighter=lamplighter.main:main',
        ],
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.8',
)
