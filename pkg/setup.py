import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: install the pure-Python fallback only
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "lattice_wce._kernels",
                ["src/lattice_wce/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # no FMA contraction: keeps results bit-identical to the numpy fallback
                extra_compile_args=["-O3", "-fopenmp", "-ffp-contract=off"],
                extra_link_args=["-fopenmp"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
