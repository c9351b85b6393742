"""JSON encoding/decoding of exact rationals and named elements.

Integers stay JSON integers; non-integral rationals are "p/q" strings so
reports remain exact and byte-deterministic. Parsing accepts integers and
"p/q" strings. Parse errors carry a `path` attribute with the offending
field locus for the CLI's error reports.
"""

from fractions import Fraction

from .errors import DomainError


def fraction_to_json(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, int):
        return v
    return float(v)


def _domain_error(message, path):
    err = DomainError(message)
    err.path = f"$.{path}"
    return err


def fraction_from_json(v, path="value"):
    if isinstance(v, bool):
        raise _domain_error(f"{path}: expected a rational, got a boolean", path)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise _domain_error(f"{path}: not a rational: {v!r}", path) from None
    raise _domain_error(f"{path}: expected an integer or 'p/q' string", path)


def parse_named_element(algebra, mapping, path="element"):
    """Element from {basis name: coefficient}; unknown names are an error."""
    named = {}
    for name, value in mapping.items():
        if name not in algebra.basis_names:
            raise _domain_error(
                f"{path}.{name}: unknown basis vector for "
                f"{algebra.family}{list(algebra.params)}",
                f"{path}.{name}",
            )
        named[name] = fraction_from_json(value, path=f"{path}.{name}")
    return algebra.element(named)


def element_to_named_json(element, grades=None):
    """Full named coefficient table (zeros included) over the given grades.

    Fixed key set and order make reports byte-deterministic.
    """
    alg = element.algebra
    indices = (range(alg.dim) if grades is None else
               [i for g in grades for i in alg.indices_of_grade(g)])
    return {alg.basis_names[i]: fraction_to_json(element.coeffs[i])
            for i in sorted(indices)}


def vector_from_json(values, path="point"):
    return [fraction_from_json(v, path=f"{path}[{i}]")
            for i, v in enumerate(values)]
