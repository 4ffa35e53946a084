"""Build script: compiles the optional Cython kernel extension.

The extension accelerates the hot inner loops (Sturm counts, implicit-shift
QL sweeps, velocity-Verlet stepping).  If Cython or a C compiler is missing
the build degrades to the pure NumPy fallback in perfectchain._kernels.
Set PERFECTCHAIN_PURE_PYTHON=1 to skip the extension on purpose.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("PERFECTCHAIN_PURE_PYTHON"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython/NumPy unavailable at build time; "
                      "installing with the pure-Python kernels only.")
        return []
    ext = Extension(
        "perfectchain._kernels._native",
        ["src/perfectchain/_kernels/_native.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


class OptionalBuildExt(build_ext):
    """Never fail the install over the accelerator: warn and fall back."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"kernel extension build failed ({exc}); "
                          "the pure-Python fallback will be used.")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "the pure-Python fallback will be used.")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
