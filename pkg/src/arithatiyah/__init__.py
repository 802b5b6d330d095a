"""Cech-cocycle models of arithmetic extensions and their computable companions.

Modules:

* ``forms``   chartwise symbolic differential forms and covers of P^1
* ``cech``    alternating Cech cochains, cone cocycles, the basic exact sequence
* ``atiyah``  arithmetic Atiyah and first Chern cocycles of hermitian bundles
* ``tori``    period lattices, characters, monodromy, torsion and reality tests
* ``fibered`` exact linear algebra of fibers and the VA verdicts
* ``cli``     scenarios, the built-in catalog and the acceptance suite
"""

from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
