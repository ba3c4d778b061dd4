# Copyright (C) 2026 taylor.fish <contact@taylor.fish>
#
# This file is part of trimap.
#
# trimap is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# trimap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with trimap.  If not, see <http://www.gnu.org/licenses/>.

"""Polynomials in the free algebra F_ell<z_1, ..., z_N>.

Words are tuples of generator numbers, 1-based; the empty word is 1.
"""

from .errors import ParameterError
from .field import FieldParams
from . import linalg
from typing import Dict, Sequence, Tuple

Word = Tuple[int, ...]


class NCPoly:
    """A polynomial over F_ell in non-commuting variables. Immutable.
    """
    __slots__ = ("ell", "terms")

    def __init__(self, ell: int, terms: Dict[Word, int] = None):
        self.ell = ell
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(int(i) for i in word)
            if any(i < 1 for i in word):
                raise ParameterError("Generator numbers start at 1.")
            c %= ell
            if c:
                clean[word] = (clean.get(word, 0) + c) % ell
                if not clean[word]:
                    del clean[word]
        self.terms = clean

    @classmethod
    def constant(cls, ell: int, c: int) -> "NCPoly":
        return cls(ell, {(): c})

    @classmethod
    def word(cls, ell: int, word: Sequence[int], c: int = 1) -> "NCPoly":
        return cls(ell, {tuple(word): c})

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if other.ell != self.ell:
                raise ParameterError("Mixed-characteristic arithmetic.")
            return other
        if isinstance(other, int):
            return NCPoly.constant(self.ell, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for word, c in other.terms.items():
            terms[word] = terms.get(word, 0) + c
        return NCPoly(self.ell, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ell, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                terms[word] = terms.get(word, 0) + c1 * c2
        return NCPoly(self.ell, terms)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ell == other.ell and self.terms == other.terms

    def __hash__(self):
        return hash((self.ell, frozenset(self.terms.items())))

    def __repr__(self):
        return "NCPoly({})".format(self.to_text().strip().replace("\n", "; "))

    def sorted_terms(self):
        """Terms ordered by word length, then lexicographically.
        """
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, word: Sequence[int]) -> int:
        return self.terms.get(tuple(word), 0)

    def generators(self) -> int:
        """The largest generator number that occurs.
        """
        return max((max(w) for w in self.terms if w), default=0)

    def has_encoding_shape(self, n: int) -> bool:
        """Whether the support is inside {1, z_1, ..., z_N} plus exactly
        one word of length n.
        """
        long_words = [w for w in self.terms if len(w) > 1]
        if n == 1:
            return all(len(w) <= 1 for w in self.terms)
        return len(long_words) == 1 and len(long_words[0]) == n

    def evaluate_matrices(self, field: FieldParams,
                          matrices: Sequence[list]) -> list:
        """lambda(f): substitutes z_i = matrices[i - 1] (over F_ell).
        """
        size = len(matrices[0])
        total = [[field.zero] * size for _ in range(size)]
        ident = linalg.identity(field, size)
        for word, c in self.terms.items():
            product = ident
            for i in word:
                if i > len(matrices):
                    raise ParameterError("No matrix for z_{}".format(i))
                product = linalg.matmul(product, matrices[i - 1])
            total = [
                [t + p * c for t, p in zip(trow, prow)]
                for trow, prow in zip(total, product)
            ]
        return total

    def to_text(self) -> str:
        """One ``coeff : i1.i2...ik`` line per term.
        """
        lines = []
        for word, c in self.sorted_terms():
            word_text = ".".join(map(str, word))
            lines.append("{} : {}".format(c, word_text).rstrip())
        return "".join(line + "\n" for line in lines)
