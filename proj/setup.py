import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

here = os.path.abspath(os.path.dirname(__file__))

ext = Pybind11Extension(
    "fgt1d._core",
    sources=[
        "bindings/pymodule.cpp",
        "src/soe.cpp",
        "src/contour.cpp",
        "src/cf.cpp",
        "src/reduction.cpp",
        "src/transform.cpp",
        "src/rng.cpp",
    ],
    include_dirs=[
        os.path.join(here, "include"),
        os.path.join(here, "src"),
        "/usr/include/eigen3",
    ],
    cxx_std=20,
    extra_compile_args=["-O2", "-fext-numeric-literals"],
    libraries=["quadmath"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
