"""Bundle description files.

A document is an INI-style file with sections ``base``, ``fiber``,
``structure`` and ``vector_bundle``::

    [base]
    generators = t:1:3        # name:degree[:truncation], comma separated
    cap = 16

    [fiber]
    kind = real               # real | complex
    n = 3

    [structure]
    alpha = 0
    w2 = t^2                  # w_i has degree i
    nu1 = t

    [vector_bundle]
    k = 2
    wprime1 = t

Only ``[fiber]`` is required.  A missing ``[base]`` is the point with cap
``DEFAULT_CAP``.  Omitted coefficients are zero.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass

from .algebra import FiniteGradedAlgebra, GeneratorSpec, build_from_presentation
from .bundle import (
    BundleData,
    FiberKind,
    FiberSpec,
    ObstructedFiber,
    VectorBundleSpec,
    validate_bundle,
    validate_vector_bundle,
)
from .expr import ExprError, eval_base
from .obstructions import SpaceDescriptor, SpaceKind

DEFAULT_CAP = 24
SECTIONS = ("base", "fiber", "structure", "vector_bundle")
_KEYED = re.compile(r"^(w|nu|wprime)(\d+)$")


class DocumentError(ValueError):
    exit_code = 1

    def __init__(self, message: str, line: int | None = None, column: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        if path:
            where.append(path)
        super().__init__(f"{' '.join(where)}: {message}" if where else message)


class DocumentParseError(DocumentError):
    exit_code = 2


class DocumentValidationError(DocumentError):
    exit_code = 1


@dataclass(frozen=True)
class BundleDocument:
    generators: tuple[GeneratorSpec, ...]
    bundle: BundleData
    vector_bundle: VectorBundleSpec | None

    @property
    def base(self) -> FiniteGradedAlgebra:
        return self.bundle.base

    @property
    def fiber(self) -> FiberSpec:
        return self.bundle.fiber


def _locate(text: str, section: str, key: str | None = None) -> tuple[int | None, int | None]:
    """1-based line and column of ``key``'s value inside ``section`` (or of the header)."""
    current = None
    header_line = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        m = re.match(r"^\[([^\]]+)\]", s)
        if m:
            current = m.group(1).strip()
            if current == section:
                header_line = ln
            continue
        if current == section and key is not None:
            m = re.match(rf"^(\s*{re.escape(key)}\s*[=:]\s*)", raw)
            if m:
                return ln, m.end() + 1
    return header_line, None


def _read(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"), strict=True)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise DocumentParseError("key outside any section", exc.lineno) from None
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as exc:
        raise DocumentParseError(exc.message.split(":")[-1].strip() or str(exc), exc.lineno) from None
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise DocumentParseError("malformed line", line) from None
    for sec in cp.sections():
        if sec not in SECTIONS:
            raise DocumentParseError(f"unknown section [{sec}]", _locate(text, sec)[0], path=sec)
    return cp


def _int(text: str, cp, section: str, key: str, default=None, lo: int | None = None) -> int:
    if not cp.has_option(section, key):
        if default is None:
            raise DocumentParseError(f"missing required key '{key}'", _locate(text, section)[0], path=f"{section}.{key}")
        return default
    raw = cp.get(section, key).strip()
    line, col = _locate(text, section, key)
    try:
        val = int(raw)
    except ValueError:
        raise DocumentParseError(f"expected an integer, got {raw!r}", line, col, f"{section}.{key}") from None
    if lo is not None and val < lo:
        raise DocumentValidationError(f"must be >= {lo}", line, col, f"{section}.{key}")
    return val


def _generators(text: str, cp) -> tuple[GeneratorSpec, ...]:
    if not cp.has_option("base", "generators"):
        return ()
    raw = cp.get("base", "generators")
    line, col = _locate(text, "base", "generators")
    out = []
    for item in (p.strip() for p in raw.split(",")):
        if not item:
            continue
        parts = [p.strip() for p in item.split(":")]
        if len(parts) not in (2, 3):
            raise DocumentParseError(f"generator {item!r} is not name:degree[:truncation]", line, col, "base.generators")
        try:
            degree = int(parts[1])
            trunc = None if len(parts) == 2 or parts[2] in ("none", "") else int(parts[2])
        except ValueError:
            raise DocumentParseError(f"bad number in generator {item!r}", line, col, "base.generators") from None
        try:
            spec = GeneratorSpec(parts[0], degree, trunc)
        except ValueError as exc:
            raise DocumentValidationError(str(exc), line, col, "base.generators") from None
        if spec.name in ("x", "y"):
            raise DocumentValidationError("x and y are reserved for the polynomial variables", line, col, "base.generators")
        out.append(spec)
    names = [g.name for g in out]
    if len(set(names)) != len(names):
        raise DocumentValidationError(f"duplicate generator names {names}", line, col, "base.generators")
    return tuple(out)


def parse_space(text: str) -> SpaceDescriptor:
    """Read only ``[fiber]``, allowing any space kind and even n (for obstruction queries)."""
    cp = _read(text)
    if not cp.has_section("fiber"):
        raise DocumentParseError("missing section [fiber]", path="fiber")
    kind = cp.get("fiber", "kind", fallback="").strip()
    line, col = _locate(text, "fiber", "kind")
    try:
        kind = SpaceKind(kind)
    except ValueError:
        raise DocumentParseError(f"unknown space kind {kind!r}", line, col, "fiber.kind") from None
    if kind is SpaceKind.CUSTOM:
        return SpaceDescriptor.custom(_int(text, cp, "fiber", "chi"))
    if kind is SpaceKind.CAYLEY:
        return SpaceDescriptor.cayley()
    return SpaceDescriptor(kind, _int(text, cp, "fiber", "n", lo=1))


def _coefficients(text, cp, section, allowed_prefixes, base):
    coeffs: dict[str, dict[int, int]] = {p: {} for p in allowed_prefixes}
    if not cp.has_section(section):
        return coeffs
    for key in cp.options(section):
        if section == "structure" and key == "alpha" or section == "vector_bundle" and key == "k":
            continue
        line, col = _locate(text, section, key)
        m = _KEYED.match(key)
        if not m or m.group(1) not in allowed_prefixes:
            raise DocumentParseError(f"unknown key '{key}'", line, col, f"{section}.{key}")
        raw = cp.get(section, key)
        try:
            val = eval_base(base, raw)
        except ExprError as exc:
            raise DocumentParseError(
                str(exc).rsplit(" (column", 1)[0], line, (col or 1) + exc.column, f"{section}.{key}"
            ) from None
        if val:
            coeffs[m.group(1)][int(m.group(2))] = val
    return coeffs


def parse_document(text: str, cap: int | None = None, k: int | None = None) -> BundleDocument:
    """Parse and fully validate a bundle document.

    ``cap`` and ``k`` override the document's base cap and vector-bundle rank.
    """
    cp = _read(text)
    if not cp.has_section("fiber"):
        raise DocumentParseError("missing section [fiber]", path="fiber")
    gens = _generators(text, cp) if cp.has_section("base") else ()
    if cap is None:
        cap = _int(text, cp, "base", "cap", default=DEFAULT_CAP, lo=0) if cp.has_section("base") else DEFAULT_CAP
    base = build_from_presentation(gens, cap)

    kind_raw = cp.get("fiber", "kind", fallback="").strip()
    kline, kcol = _locate(text, "fiber", "kind")
    try:
        kind = FiberKind(kind_raw)
    except ValueError:
        if kind_raw in {s.value for s in SpaceKind}:
            raise DocumentValidationError(
                f"fibre kind {kind_raw!r} admits no bundle machinery (no free involution)", kline, kcol, "fiber.kind"
            ) from None
        raise DocumentParseError(f"fibre kind must be 'real' or 'complex', got {kind_raw!r}", kline, kcol, "fiber.kind") from None
    n = _int(text, cp, "fiber", "n", lo=1)
    try:
        fiber = FiberSpec(kind, n)
    except ObstructedFiber as exc:
        line, col = _locate(text, "fiber", "n")
        raise DocumentValidationError(str(exc), line, col, "fiber.n") from None

    coeffs = _coefficients(text, cp, "structure", ("w", "nu"), base)
    alpha = _int(text, cp, "structure", "alpha", default=0) if cp.has_section("structure") else 0
    bd = BundleData(fiber, base, coeffs["w"], coeffs["nu"], alpha)
    bad = validate_bundle(bd)
    if bad:
        line, col = _locate(text, "structure", bad[0].field)
        raise DocumentValidationError(
            "; ".join(f"{v.field}: {v.detail}" for v in bad), line, col, f"structure.{bad[0].field}"
        )

    vb = None
    if cp.has_section("vector_bundle") or k is not None:
        if k is None:
            k = _int(text, cp, "vector_bundle", "k", lo=1)
        elif k < 1:
            raise DocumentValidationError("k must be >= 1", path="vector_bundle.k")
        wp = _coefficients(text, cp, "vector_bundle", ("wprime",), base)["wprime"]
        vb = VectorBundleSpec(k, wp)
        bad = validate_vector_bundle(vb, base)
        if bad:
            line, col = _locate(text, "vector_bundle", bad[0].field)
            raise DocumentValidationError(
                "; ".join(f"{v.field}: {v.detail}" for v in bad), line, col, f"vector_bundle.{bad[0].field}"
            )
    return BundleDocument(gens, bd, vb)


def emit_document(doc: BundleDocument) -> str:
    """Canonical text form; ``parse_document(emit_document(d)) == d``."""
    base = doc.base
    lines = ["[base]"]
    gens = ", ".join(
        f"{g.name}:{g.degree}" + (f":{g.truncation}" if g.truncation is not None else "") for g in doc.generators
    )
    lines.append(f"generators = {gens}".rstrip())
    lines.append(f"cap = {base.cap}")
    lines += ["", "[fiber]", f"kind = {doc.fiber.kind.value}", f"n = {doc.fiber.n}"]
    lines += ["", "[structure]", f"alpha = {doc.bundle.alpha}"]
    for i, c in sorted(doc.bundle.w.items()):
        lines.append(f"w{i} = {base.format(c)}")
    for i, c in sorted(doc.bundle.nu.items()):
        lines.append(f"nu{i} = {base.format(c)}")
    if doc.vector_bundle is not None:
        lines += ["", "[vector_bundle]", f"k = {doc.vector_bundle.k}"]
        for i, c in sorted(doc.vector_bundle.wprime.items()):
            lines.append(f"wprime{i} = {base.format(c)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "DEFAULT_CAP",
    "BundleDocument",
    "DocumentError",
    "DocumentParseError",
    "DocumentValidationError",
    "emit_document",
    "parse_document",
    "parse_space",
]
