import os
from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    env = os.environ.get("EIGEN3_INCLUDE_DIR")
    candidates = [env] if env else []
    candidates += ["/usr/include/eigen3", "/usr/local/include/eigen3"]
    for c in candidates:
        if c and os.path.isdir(os.path.join(c, "Eigen")):
            return c
    raise RuntimeError("Eigen headers not found; set EIGEN3_INCLUDE_DIR")


ext = Pybind11Extension(
    "invkit._invkit",
    sources=sorted(glob("src/*.cpp")) + ["bindings/invkit_py.cpp"],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
