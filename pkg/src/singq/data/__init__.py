"""Bundled fixture structures and corpus diagrams.

Fixtures are algebra (.alg) and weight (.wgt) files; the corpus holds
diagram (.dgm) transcriptions of singular knots.  Loaders return parsed
objects; ``*_path`` helpers return filesystem paths for the CLI.
"""

from importlib import resources

from ..algebra import LoadedAlgebra, parse_algebra
from ..diagram import SingularDiagram, parse_diagram
from ..invariants import parse_weights


def _read(subdir: str, name: str) -> str:
    return (resources.files(__package__) / subdir / name).read_text()


def fixture_path(name: str):
    return resources.files(__package__) / "fixtures" / name


def corpus_path(name: str):
    return resources.files(__package__) / "corpus" / name


def fixture_names() -> list:
    root = resources.files(__package__) / "fixtures"
    return sorted(p.name for p in root.iterdir()
                  if p.name.endswith((".alg", ".wgt")))


def corpus_names() -> list:
    root = resources.files(__package__) / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".dgm"))


def load_algebra(name: str) -> LoadedAlgebra:
    return parse_algebra(_read("fixtures", name))


def load_weights(name: str):
    return parse_weights(_read("fixtures", name))


def load_diagram(name: str) -> SingularDiagram:
    return parse_diagram(_read("corpus", name))
