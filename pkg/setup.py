"""Build script: compiles the optional row-reduction kernel.

The compiled extension is a pure speed-up; if it cannot be built the
package falls back to the identical pure-Python kernel at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Let the install proceed when no C toolchain is available."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernel {ext.name} ({exc})")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("oridial._kernels", ["src/oridial/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
