"""Builds the prk._core extension with setuptools.

The CMake build remains the primary workflow (it also builds the CLI and
the test binaries); this file exists so that `pip install -e .` works with
nothing but setuptools and pybind11.
"""

import os
import tempfile

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ROOT = os.path.abspath(os.path.dirname(__file__))


def generate_embedded_tables() -> str:
    """Mirror the configure-time embedding of the reference fixture."""
    csv_path = os.path.join(ROOT, "data", "reference_tables.csv")
    with open(csv_path) as fh:
        csv = fh.read()
    header = (
        "#pragma once\n\n"
        "// Generated at build time from {path} - do not edit.\n\n"
        "namespace prk::generated {{\n\n"
        "inline constexpr const char* kReferenceTablesCsv =\n"
        '    R"fixture({csv})fixture";\n\n'
        "inline constexpr const char* kReferenceTablesPath = \"{path}\";\n\n"
        "}}  // namespace prk::generated\n"
    ).format(csv=csv, path=csv_path)
    gen_dir = os.path.join(
        tempfile.mkdtemp(prefix="prk_generated_"), "prk"
    )
    os.makedirs(gen_dir, exist_ok=True)
    with open(os.path.join(gen_dir, "embedded_tables.hpp"), "w") as fh:
        fh.write(header)
    return os.path.dirname(gen_dir)


SOURCES = [
    "bindings/module.cpp",
    "src/arith.cpp",
    "src/quadfield.cpp",
    "src/classnumber.cpp",
    "src/prational.cpp",
    "src/search.cpp",
    "src/density.cpp",
    "src/report.cpp",
    "src/cli.cpp",
]

ext = Pybind11Extension(
    "prk._core",
    SOURCES,
    include_dirs=["include", "vendor", generate_embedded_tables()],
    libraries=["gmpxx", "gmp", "mpfr"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
