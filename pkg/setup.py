"""Build script: compiles the optional fast-kernel extension when Cython and
a C compiler are available.  The package works without it (a NumPy fallback
is selected at import time), so any build failure here only costs speed.

Set RELAYOSC_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            print(f"warning: skipping fast kernels ({exc}); "
                  "falling back to the pure NumPy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to the pure NumPy backend")


ext_modules = []
if os.environ.get("RELAYOSC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/relayosc/_kernels/_fast.pyx"],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        print("warning: Cython not available; building without fast kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
