"""Shared fixtures: one enumeration pass per design, reused across test modules."""

import pytest

import steiner_ekr as se


def _build(name):
    if name == "fano":
        return se.projective_plane(2)
    if name == "proj3":
        return se.projective_plane(3)
    if name == "affine3":
        return se.affine_plane(3)
    if name == "sts13a":
        return se.sts13(1)
    if name == "sts13b":
        return se.sts13(2)
    if name == "pg32":
        return se.pg3_line_design(2)
    if name == "pg33":
        return se.pg3_line_design(3)
    if name == "unital2":
        return se.hermitian_unital(2)
    if name == "unital3":
        return se.hermitian_unital(3)
    if name.startswith("kgraph"):
        return se.complete_graph(int(name[6:]))
    raise KeyError(name)


class Suite:
    """Lazily built designs plus their full maximal-family enumerations."""

    def __init__(self):
        self._designs = {}
        self._families = {}

    def design(self, name):
        if name not in self._designs:
            self._designs[name] = _build(name)
        return self._designs[name]

    def families(self, name, min_size=1):
        key = (name, min_size)
        if key not in self._families:
            self._families[key] = se.enumerate_maximal_ekr(
                self.design(name), min_size=min_size
            )
        return self._families[key]

    def pair(self, name, min_size=1):
        return self.design(name), self.families(name, min_size)


@pytest.fixture(scope="session")
def suite():
    return Suite()
