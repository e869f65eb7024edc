"""Loading the shipped JSON datasets.

Rationals are strings (``"1/4"``, ``"-1"``); Gram matrices are integer arrays.
A term flagged ``"pm": true`` lists one representative per class and is
expanded to ``{v, -v}`` on load.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ParseError, ValidationError
from .exact import Matrix, as_matrix
from .lattice import DiscriminantGroup, Lattice, make_lattice
from .product import PrincipalPart, ProductCandidate, Term, Table1Row, validate

SCHEMA = "1"
_RAT = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: expected a rational string like '1/4', got {text!r}")
    s = str(text).strip()
    if not _RAT.match(s):
        raise ParseError(f"{where}: {text!r} is not an exact rational")
    return Fraction(s)


def _get(obj: dict, key: str, where: str, kind=None):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}.{key}: missing")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return val


@dataclass
class CandidateMeta:
    """Per-candidate dataset annotations that are not part of the principal part."""

    divisor_d: list[int] | None = None
    expect_terms: list[dict] | None = None


@dataclass
class LatticeDataset:
    name: str
    lattice_name: str
    lattice: Lattice
    group: DiscriminantGroup
    candidates: list[ProductCandidate]
    meta: dict[str, CandidateMeta]
    isometries: dict[str, Matrix]
    expected: dict
    graph_tag: str | None = None
    path: str = ""
    by_label: dict[str, ProductCandidate] = field(init=False, repr=False)

    def __post_init__(self):
        self.by_label = {c.label: c for c in self.candidates}

    def tagged(self, tag: str | None) -> list[ProductCandidate]:
        return [c for c in self.candidates if tag is None or tag in c.tags]

    def candidate(self, label: str) -> ProductCandidate:
        try:
            return self.by_label[label]
        except KeyError:
            raise ValidationError(f"{self.name}: no candidate labelled {label!r}") from None


def data_dir(override: str | os.PathLike | None = None) -> Path:
    """``override``, else ``$REFLEX_DATA_DIR``, else the packaged data directory."""
    if override:
        path = Path(override)
    elif os.environ.get("REFLEX_DATA_DIR"):
        path = Path(os.environ["REFLEX_DATA_DIR"])
    else:
        return Path(str(resources.files("reflex") / "data"))
    if not path.is_dir():
        raise ValidationError(f"data directory {path} does not exist")
    return path


def resolve(name_or_path: str, directory: str | os.PathLike | None = None) -> Path:
    p = Path(name_or_path)
    if p.suffix == ".json" or p.exists():
        return p
    return data_dir(directory) / f"{name_or_path}.json"


def dataset_names(directory: str | os.PathLike | None = None) -> list[str]:
    d = data_dir(directory)
    return sorted(p.stem for p in d.glob("*.json") if p.stem != "table1")


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"{path}: cannot read ({e.strerror})") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: top level must be an object")
    if raw.get("schema") != SCHEMA:
        raise ParseError(f"{path}: schema must be {SCHEMA!r}, got {raw.get('schema')!r}")
    return raw


def _matrix(val, where: str) -> Matrix:
    if not isinstance(val, list) or not all(isinstance(r, list) for r in val):
        raise ParseError(f"{where}: expected a list of integer rows")
    for i, row in enumerate(val):
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"{where}[{i}][{j}]: expected an integer, got {x!r}")
    try:
        return as_matrix(val)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def _candidate(raw: dict, k: int, group: DiscriminantGroup) -> tuple[ProductCandidate, CandidateMeta]:
    where = f"candidates[{k}]"
    label = _get(raw, "label", where, str)
    where = f"candidates[{k}] ({label})"
    terms = []
    for t, traw in enumerate(_get(raw, "terms", where, list)):
        tw = f"{where}.terms[{t}]"
        exponent = parse_rational(_get(traw, "exponent", tw), f"{tw}.exponent")
        coeff = traw.get("coefficient", 1)
        if isinstance(coeff, bool) or not isinstance(coeff, int):
            raise ParseError(f"{tw}.coefficient: expected an integer")
        cosets = []
        for c, vraw in enumerate(_get(traw, "cosets", tw, list)):
            cw = f"{tw}.cosets[{c}]"
            if not isinstance(vraw, list):
                raise ParseError(f"{cw}: expected a list of rationals")
            vec = [parse_rational(x, f"{cw}[{i}]") for i, x in enumerate(vraw)]
            try:
                u = group.coset(vec)
            except ValueError as e:
                raise ValidationError(f"{label}: {cw}: {e}") from None
            cosets.append(u)
            if traw.get("pm") and -u != u:
                cosets.append(-u)
        terms.append(Term(exponent, tuple(cosets), coeff))
    constant = raw.get("constant")
    if constant is not None and (isinstance(constant, bool) or not isinstance(constant, int)):
        raise ParseError(f"{where}.constant: expected an integer")
    weight = raw.get("weight")
    weight = None if weight is None else parse_rational(weight, f"{where}.weight")
    tags = raw.get("tags", [])
    if not isinstance(tags, list) or not all(isinstance(x, str) for x in tags):
        raise ParseError(f"{where}.tags: expected a list of strings")
    pc = ProductCandidate(label, group, PrincipalPart(tuple(terms), constant), weight, tuple(tags))
    meta = CandidateMeta(raw.get("divisor_d"), raw.get("expect_terms"))
    return pc, meta


def load_dataset(path_or_name: str | os.PathLike, directory: str | os.PathLike | None = None) -> LatticeDataset:
    """Parse, canonicalize and validate a lattice dataset.

    Raises :class:`ParseError` for malformed files and :class:`ValidationError`
    when a candidate fails an invariant (the message names the candidate).
    """
    path = resolve(str(path_or_name), directory)
    raw = _read_json(path)
    name = _get(raw, "name", "top", str)
    gram = _matrix(_get(raw, "gram", "top"), "gram")
    try:
        lattice = make_lattice(gram, str(raw.get("lattice", name)))
    except ValueError as e:
        raise ValidationError(f"{name}: gram: {e}") from None
    group = DiscriminantGroup(lattice)

    cands, meta = [], {}
    for k, craw in enumerate(_get(raw, "candidates", "top", list)):
        pc, m = _candidate(craw, k, group)
        if pc.label in meta:
            raise ValidationError(f"{name}: duplicate candidate label {pc.label!r}")
        rep = validate(pc, m.expect_terms)
        if not rep.ok:
            raise ValidationError(f"{pc.label}: " + "; ".join(rep.problems))
        cands.append(pc)
        meta[pc.label] = m

    isos = {}
    for key, mat in (raw.get("isometries") or {}).items():
        isos[key] = _matrix(mat, f"isometries.{key}")
    expected = raw.get("expected", {})
    if not isinstance(expected, dict):
        raise ParseError("expected: must be an object")
    return LatticeDataset(
        name=name,
        lattice_name=str(raw.get("lattice", name)),
        lattice=lattice,
        group=group,
        candidates=cands,
        meta=meta,
        isometries=isos,
        expected=expected,
        graph_tag=raw.get("graph_tag"),
        path=str(path),
    )


@dataclass
class Table1Dataset:
    rows: list[Table1Row]
    expected_rows: int | None = None


def load_table1(path: str | os.PathLike | None = None, directory: str | os.PathLike | None = None) -> Table1Dataset:
    p = Path(path) if path else data_dir(directory) / "table1.json"
    raw = _read_json(p)
    rows = []
    for k, r in enumerate(_get(raw, "rows", "top", list)):
        w = f"rows[{k}]"
        n = _get(r, "n", w, int)
        gens = tuple(parse_rational(x, f"{w}.generator_weights[{i}]") for i, x in enumerate(_get(r, "generator_weights", w, list)))
        kj = parse_rational(_get(r, "kJ", w), f"{w}.kJ")
        dec = []
        for i, item in enumerate(_get(r, "decomposition", w, list)):
            if not isinstance(item, list) or len(item) != 2 or not isinstance(item[1], int):
                raise ParseError(f"{w}.decomposition[{i}]: expected [weight, count]")
            dec.append((parse_rational(item[0], f"{w}.decomposition[{i}][0]"), item[1]))
        rows.append(Table1Row(_get(r, "group", w, str), n, gens, kj, tuple(dec)))
    return Table1Dataset(rows, raw.get("expected", {}).get("rows"))
