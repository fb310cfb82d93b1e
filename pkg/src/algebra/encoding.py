"""JSON encodings of exact scalars.

    rational -> "p/q" (or "p" for integers)
    poly     -> [{"coeff": "p/q", "monomial": ["m_x", "m_x", "m_xy"]}, ...]
    matrix   -> [["p/q", ...], ...] row-major
"""
from fractions import Fraction

from src.algebra.scalars import DomainTag, Poly, RatMatrix, Scalar, ScalarDomain


def encode_rational(value: Fraction) -> str:
    """Use to encode a rational as a string."""
    return str(Fraction(value))


def decode_rational(raw: str | int) -> Fraction:
    """Use to decode a rational given as "p/q", "p" or an integer."""
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        error = f"Expected a rational as string 'p/q' or integer, got {raw!r}."
        raise ValueError(error)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        error = f"Invalid rational {raw!r}: {exc}"
        raise ValueError(error) from exc


def encode_scalar(value: Scalar) -> str | list:
    """Use to encode a scalar of any domain into JSON-compatible data."""
    if isinstance(value, Poly):
        out = []
        for mono, coeff in sorted(value.terms.items()):
            names = [name for name, exp in mono for _ in range(exp)]
            out.append({"coeff": encode_rational(coeff), "monomial": names})
        return out
    if isinstance(value, RatMatrix):
        return [[encode_rational(v) for v in row] for row in value.rows()]
    return encode_rational(value)


def decode_scalar(domain: ScalarDomain, raw: object) -> Scalar:
    """Use to decode JSON data into a scalar of the given domain."""
    if domain.tag is DomainTag.RATIONAL:
        return decode_rational(raw)

    if domain.tag is DomainTag.POLY:
        if isinstance(raw, (str, int)):
            return Poly.constant(decode_rational(raw))
        if not isinstance(raw, list):
            error = f"Polynomial must be a list of {{coeff, monomial}} terms, got {raw!r}."
            raise ValueError(error)
        total = Poly()
        for term in raw:
            if not isinstance(term, dict) or "coeff" not in term or "monomial" not in term:
                error = f"Polynomial term needs 'coeff' and 'monomial' fields, got {term!r}."
                raise ValueError(error)
            product = Poly.constant(decode_rational(term["coeff"]))
            for name in term["monomial"]:
                product = product * Poly.variable(str(name))
            total = total + product
        return total

    if not isinstance(raw, list) or len(raw) != domain.dimension:
        error = f"Matrix value must be a list of {domain.dimension} rows, got {raw!r}."
        raise ValueError(error)
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != domain.dimension:
            error = f"Matrix row must hold {domain.dimension} entries, got {row!r}."
            raise ValueError(error)
        rows.append([decode_rational(v) for v in row])
    return RatMatrix(rows)
