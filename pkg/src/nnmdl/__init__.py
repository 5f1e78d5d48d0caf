"""Satisfiability, model checking and brute-force search for modal description
logics interpreted over neighbourhood frames.

The package is organized by concern:

- ``syntax``: abstract syntax, text grammar, negation normal form, fragments
- ``logics``: the lattice of neighbourhood logics named by condition letters
- ``semantics``: neighbourhood and relational models plus all checkers
- ``oracle``: bounded brute-force model enumeration
- ``tableau``: the labelled tableau calculus and the DFS solver
- ``model_extract``: countermodel extraction from open tableaux
- ``abstraction``: the decision procedure for formulas without modal concepts
- ``translate``: formula and model translations into relational modal logic
- ``cli``: the ``nnmdl`` command line tool
"""

__version__ = "0.1.0"
