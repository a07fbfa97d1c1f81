from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "dualdiv._core",
    sources=[
        "src/kaplan_meier.cpp",
        "src/estimators.cpp",
        "src/asymptotics.cpp",
        "src/simulation.cpp",
        "src/io.cpp",
        "python/bindings.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
