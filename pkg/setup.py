from setuptools import setup, find_packages

install_requires = [
    'setuptools',
    'numpy>=1.17',  # Generator / Philox
    'scipy>=1.4',
    'click',
    'configparser',
    'termcolor'
]

setup(name='entlab',
      version='1.0',
      description="numerical toolkit for bipartite and multipartite entanglement",
      long_description=open("README.md", encoding="utf-8").read(),
      long_description_content_type="text/markdown",
      classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Software Development :: Libraries",
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
      ],
      keywords='quantum entanglement separability',
      license='GPLv3+',
      packages=find_packages(exclude=['docs', 'scripts', 'tests']),
      include_package_data=True,
      zip_safe=True,
      install_requires=install_requires,
      extras_require={'test': ['pytest', 'hypothesis']},
      entry_points={'console_scripts': ['entlab=entlab.cli:cli']}
      )
