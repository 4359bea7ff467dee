#include <pybind11/pybind11.h>
PYBIND11_MODULE(_core, m) { m.doc() = "numrange core (placeholder)"; m.attr("__version__") = "0.1.0"; }
