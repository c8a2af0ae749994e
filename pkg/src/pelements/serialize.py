"""Generator files: a ``PERM n`` or ``MAT n GF p f c0..cf`` header, then one generator per line."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Sequence

from .elements import CosetElt, MatrixElt, Permutation
from .engine import DEFAULT_CAP, FiniteGroup, closure
from .gf import FieldSpec, parse_field_header


class FormatError(ValueError):
    pass


def element_to_text(g: Any) -> str:
    if isinstance(g, Permutation):
        return str(g)
    if isinstance(g, MatrixElt):
        return " ".join(str(x) for x in g.entries)
    if isinstance(g, CosetElt):
        return element_to_text(g.data.parent.elements[g.rep]) + " mod N"
    raise FormatError(f"cannot serialize {type(g).__name__}")


def dumps_generators(gens: Sequence[Any], identity: Any) -> str:
    if isinstance(identity, Permutation):
        header = f"PERM {identity.degree}"
    elif isinstance(identity, MatrixElt):
        header = f"MAT {identity.n} {identity.field.header()}"
    else:
        raise FormatError(f"cannot serialize {type(identity).__name__}")
    return "\n".join([header, *(element_to_text(g) for g in gens)]) + "\n"


def dumps(G: FiniteGroup) -> str:
    return dumps_generators(G.gens, G.identity)


def loads_generators(text: str) -> tuple[list[Any], Any]:
    """Parse a generator file into (generators, identity)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty generator file")
    head = lines[0].split()
    try:
        if head[0] == "PERM" and len(head) == 2:
            n = int(head[1])
            return [Permutation.parse(n, ln) for ln in lines[1:]], Permutation(range(n))
        if head[0] == "MAT" and len(head) >= 3:
            n = int(head[1])
            F: FieldSpec = parse_field_header(" ".join(head[2:]))
            gens = []
            for ln in lines[1:]:
                vals = [int(x) for x in ln.split()]
                if len(vals) != n * n or any(not 0 <= v < F.q for v in vals):
                    raise FormatError(f"bad matrix line: {ln!r}")
                gens.append(MatrixElt(F, n, vals))
            return gens, MatrixElt.identity_matrix(F, n)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown header: {lines[0]!r}")


def loads(text: str, cap: int = DEFAULT_CAP, label: str = "") -> FiniteGroup:
    gens, identity = loads_generators(text)
    return closure(gens, cap, identity=identity, label=label)


def load(path: str | Path, cap: int = DEFAULT_CAP) -> FiniteGroup:
    p = Path(path)
    return loads(p.read_text(), cap, label=f"gens@{p.name}")


def save(G: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(dumps(G))
