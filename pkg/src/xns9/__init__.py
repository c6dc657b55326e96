"""Exact verification toolkit for the level-9 non-split Cartan modular curve
and its application to the class number one problem.

Submodules: exactalg (arithmetic kernel), cartan (finite matrix groups),
covering (cusps, elliptic points, genus), param (the uniformizer tower),
thue (cubic form equations), heegner (integral points, class numbers, CM
matching), ecurve (point counting and traces), cli (command line).
"""

__version__ = "0.1.0"
