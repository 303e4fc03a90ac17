"""Build script: compiles the optional arithmetic kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here degrades gracefully.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/weilnear/_ckernels.pyx"],
        language_level="3",
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"weilnear: skipping compiled kernels ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
