"""Mapping classes acting on curves and on representations.

Free-group words use one letter per generator with case for inverses:
"a1 b1 A1" or the compact "abA" (index defaults to 1). A mapping class is
either an SL(2, Z) matrix (genus one, acting on primitive homology pairs)
or a validated free-group automorphism datum for the surface group
generators; every automorphism must fix the boundary word
[a1, b1] ... [ag, bg] on the nose.
"""

from __future__ import annotations

import re

from .curves import NormalCurve, torus_table

_TOKEN = re.compile(r"([a-zA-Z])(\d*)")


def parse_word(text, genus):
    """Word as a tuple of signed generator ids: +i for a_i, -i for inverse;
    alphas occupy ids 1..g, betas g+1..2g."""
    out = []
    for m in _TOKEN.finditer(text.replace(" ", "")):
        letter, idx = m.group(1), int(m.group(2) or 1)
        kind = letter.lower()
        if kind not in ("a", "b") or not (1 <= idx <= genus):
            raise ValueError(f"bad generator token {m.group(0)!r} for genus {genus}")
        gid = idx if kind == "a" else genus + idx
        out.append(-gid if letter.isupper() else gid)
    return tuple(out)


def word_to_text(word, genus):
    parts = []
    for t in word:
        idx = abs(t)
        letter = "a" if idx <= genus else "b"
        n = idx if idx <= genus else idx - genus
        if t < 0:
            letter = letter.upper()
        parts.append(f"{letter}{n}" if genus > 1 else letter)
    return "".join(parts)


def reduce_word(word):
    out = []
    for t in word:
        if out and out[-1] == -t:
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def invert_word(word):
    return tuple(-t for t in reversed(word))


def boundary_word(genus):
    """[a1, b1] [a2, b2] ... [ag, bg] as a reduced word."""
    out = []
    for i in range(1, genus + 1):
        a, b = i, genus + i
        out.extend([a, b, -a, -b])
    return tuple(out)


class FreeGroupEndo:
    """Endomorphism of the free group on a1..ag, b1..bg."""

    def __init__(self, genus, images):
        """images: dict like {"a1": word, "b1": word} (str or token tuple)."""
        self.genus = genus
        self.images = {}
        for i in range(1, genus + 1):
            for key, gid in ((f"a{i}", i), (f"b{i}", genus + i)):
                short = key[0] if genus == 1 else None
                w = images.get(key, images.get(short, key))
                if isinstance(w, str):
                    w = parse_word(w, genus)
                self.images[gid] = reduce_word(w)

    def apply(self, word):
        out = []
        for t in word:
            img = self.images[abs(t)]
            out.extend(img if t > 0 else invert_word(img))
        return reduce_word(out)

    def abelianization(self):
        n = 2 * self.genus
        M = [[0] * n for _ in range(n)]
        for gid in range(1, n + 1):
            for t in self.images[gid]:
                M[abs(t) - 1][gid - 1] += 1 if t > 0 else -1
        return M

    def fixes_boundary(self) -> bool:
        bw = boundary_word(self.genus)
        return self.apply(bw) == bw

    def is_valid_automorphism(self) -> bool:
        """Boundary word fixed exactly, and abelianization in GL(2g, Z)."""
        if not self.fixes_boundary():
            return False
        from . import intlinalg

        M = self.abelianization()
        try:
            return abs(intlinalg._det_via_snf(M)) == 1
        except ValueError:
            return False

    def compose(self, other):
        """self after other."""
        images = {}
        for gid, w in other.images.items():
            images[_gid_name(gid, self.genus)] = self.apply(w)
        return FreeGroupEndo(self.genus, images)


def _gid_name(gid, genus):
    return f"a{gid}" if gid <= genus else f"b{gid - genus}"


def validate_automorphism(genus, images) -> bool:
    try:
        endo = FreeGroupEndo(genus, images)
    except (ValueError, KeyError):
        return False
    return endo.is_valid_automorphism()


# built-in genus-one twist generators; both fix [a, b] exactly
TWIST_ALPHA = {"a1": "a", "b1": "ba"}
TWIST_BETA = {"a1": "aB", "b1": "b"}


class MappingClass:
    """Either an SL(2,Z) matrix (genus 1) or a free-group automorphism."""

    def __init__(self, genus, matrix=None, words=None):
        if (matrix is None) == (words is None):
            raise ValueError("give exactly one of matrix or words")
        self.genus = genus
        self.matrix = None
        self.endo = None
        if matrix is not None:
            if genus != 1:
                raise ValueError("matrix mapping classes are genus-1 only")
            (a, b), (c, d) = matrix
            if a * d - b * c != 1:
                raise ValueError("matrix must lie in SL(2, Z)")
            self.matrix = ((a, b), (c, d))
        else:
            endo = FreeGroupEndo(genus, words)
            if not endo.is_valid_automorphism():
                raise ValueError(
                    "words do not define an automorphism fixing the boundary word"
                )
            self.endo = endo

    @staticmethod
    def from_json(obj, genus=1):
        if "matrix" in obj:
            return MappingClass(genus, matrix=obj["matrix"])
        return MappingClass(obj.get("genus", genus), words=obj["words"])

    def is_identity_matrix(self):
        return self.matrix == ((1, 0), (0, 1))

    def act_on_class(self, p, q):
        if self.matrix is None:
            raise ValueError("curve action needs the matrix form")
        (a, b), (c, d) = self.matrix
        return (a * p + b * q, c * p + d * q)

    def to_json(self):
        if self.matrix is not None:
            return {"matrix": [list(r) for r in self.matrix]}
        return {
            "genus": self.genus,
            "words": {
                _gid_name(gid, self.genus): word_to_text(w, self.genus)
                for gid, w in self.endo.images.items()
            },
        }


def act_on_curve(phi: MappingClass, curve: NormalCurve) -> NormalCurve:
    """Genus-one matrix action: map the homology class, re-trace."""
    if phi.matrix is None:
        raise ValueError(
            "general-genus curve images must be supplied as explicit coordinates"
        )
    table = torus_table()
    if curve.tri is not table.tri:
        raise ValueError("matrix action is defined on the built-in Delta_1")
    p, q = table.class_of(curve)
    p2, q2 = phi.act_on_class(p, q)
    return table.curve(*_canonical_class(p2, q2))


def _canonical_class(p, q):
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)
