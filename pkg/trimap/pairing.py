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

"""Miller's algorithm with the squaring trick, the Weil pairing on E[ell]
and the blinded pairing computed from published line functions.
"""

from .curve import CurveParams, Point, add, double, scalar_mul
from .errors import DegeneratePair, DenominatorZero, ParameterError, PoleHit
from .field import FieldElement, as_rng
from .retry import attempts
from typing import List
import logging
import random

logger = logging.getLogger(__name__)


def _line_params(E: CurveParams, P1: Point, P2: Point):
    # lambda, nu and x3 of the line through P1 and P2 (tangent if equal).
    x1, y1, x2, y2 = P1.x, P1.y, P2.x, P2.y
    if x1 == x2:
        lam = (x1 * x1 * 3 + E.a) / (y1 * 2)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    return lam, nu, lam * lam - x1 - x2


def line_g(E: CurveParams, P1: Point, P2: Point, Q: Point) -> FieldElement:
    """The chord function (y - lambda x - nu) / (x - x3) through P1 and P2,
    evaluated at Q.

    :raises PoleHit: If Q lies on the vertical line through P1 + P2.
    """
    if P1.x == P2.x:
        raise ParameterError("Chord function needs distinct x-coordinates.")
    lam, nu, x3 = _line_params(E, P1, P2)
    den = Q.x - x3
    if not den:
        raise PoleHit("Chord function has a pole at Q.")
    return (Q.y - lam * Q.x - nu) / den


def line_h(E: CurveParams, P1: Point, Q: Point) -> FieldElement:
    """The tangent function at P1, (y - lambda x - nu) / (x - x(2 P1)),
    evaluated at Q.
    """
    if not P1.y:
        raise ParameterError("Tangent function needs y1 != 0.")
    lam, nu, x3 = _line_params(E, P1, P1)
    den = Q.x - x3
    if not den:
        raise PoleHit("Tangent function has a pole at Q.")
    return (Q.y - lam * Q.x - nu) / den


def vertical(E: CurveParams, P1: Point, Q: Point) -> FieldElement:
    return Q.x - P1.x


def _bits(ell: int) -> List[int]:
    return [i for i in range(ell.bit_length()) if ell >> i & 1]


class MillerTranscript:
    """The intermediate values of one Miller evaluation f_P(Q).

    :ivar chain: The doubling chain P_i = 2^i P.
    :ivar H: H_0 = 1, H_{i+1} = H_i^2 h(P_i, Q).
    :ivar corrections: The partial sums Q_k of the correction chain.
    :ivar G: The factors of the correction product.
    """
    def __init__(self, ell: int):
        self.ell = ell
        self.chain = []
        self.H = []
        self.corrections = []
        self.G = []
        self.value = None

    def dump(self) -> str:
        lines = ["miller ell={} bits={}".format(
            self.ell, ".".join(map(str, _bits(self.ell))),
        )]
        for i, P in enumerate(self.chain):
            lines.append("P{} = {!r}".format(i, P))
        for i, h in enumerate(self.H):
            lines.append("H{} = {!r}".format(i, h))
        for i, Q in enumerate(self.corrections):
            lines.append("Q{} = {!r}".format(i + 1, Q))
        for i, g in enumerate(self.G):
            lines.append("G{} = {!r}".format(i + 1, g))
        lines.append("f = {!r}".format(self.value))
        return "\n".join(lines) + "\n"


def _check_factor(value, step):
    if value is None or not value:
        raise PoleHit("Line function vanishes at Q.", step)
    return value


def miller_transcript(E: CurveParams, P: Point, Q: Point) -> MillerTranscript:
    """Computes f_P(Q), where div(f_P) = ell (P) - ell (O), with the
    squaring trick.

    :raises PoleHit: If some line function has a zero or pole at Q. The
      exception's ``step`` is the index of the offending factor.
    """
    ell = E.ell
    bits = _bits(ell)
    top = ell.bit_length() - 1
    t = MillerTranscript(ell)
    one = E.field.one
    t.chain.append(P)
    for _ in range(top):
        t.chain.append(double(E, t.chain[-1]))
    t.H.append(one)
    step = 0
    for i in range(top):
        Pi = t.chain[i]
        try:
            if not Pi.y:
                factor = vertical(E, Pi, Q)
            else:
                factor = line_h(E, Pi, Q)
        except PoleHit as e:
            raise e.at_step(step) from e
        factor = _check_factor(factor, step)
        t.H.append(t.H[-1] * t.H[-1] * factor)
        step += 1
    value = one
    for i in bits:
        value = value * t.H[i]
    acc = t.chain[bits[0]]
    for k in range(1, len(bits)):
        Pk = t.chain[bits[k]]
        t.corrections.append(acc)
        try:
            if k < len(bits) - 1:
                factor = line_g(E, acc, Pk, Q)
                acc = add(E, acc, Pk)
            else:
                factor = vertical(E, acc, Q)
        except PoleHit as e:
            raise e.at_step(step) from e
        factor = _check_factor(factor, step)
        t.G.append(factor)
        value = value * factor
        step += 1
    t.value = value
    return t


def miller_f(E: CurveParams, P: Point, Q: Point) -> FieldElement:
    return miller_transcript(E, P, Q).value


def _dependent(E: CurveParams, P: Point, Q: Point) -> bool:
    R = Point()
    for _ in range(E.ell):
        if R == Q:
            return True
        R = add(E, R, P)
    return False


def weil(E: CurveParams, P: Point, Q: Point,
         rng: random.Random = None) -> FieldElement:
    """The Weil pairing (-1)^ell f_P(Q) / f_Q(P) on E[ell].

    Dependent pairs pair to 1. When a pole is hit, P is replaced by [s]P
    for a random s and the result raised to s^-1.

    :raises DegeneratePair: If the retry budget runs out.
    """
    one = E.field.one
    if P.is_infinity or Q.is_infinity or _dependent(E, P, Q):
        return one
    ell = E.ell
    rng = as_rng(rng if rng is not None else 0)
    try:
        for attempt in attempts("weil", PoleHit):
            with attempt:
                s = 1 if attempt.index == 0 else rng.randrange(1, ell)
                Ps = scalar_mul(E, s, P)
                value = miller_f(E, Ps, Q) / miller_f(E, Q, Ps)
                if ell % 2:
                    value = -value
                return value ** pow(s, -1, ell)
    except PoleHit as e:
        raise DegeneratePair(
            "Weil pairing kept hitting poles: {}".format(e.message),
        ) from e


def blinded_transcript(public, P, Q) -> MillerTranscript:
    """Runs the squaring trick on blinded points with the published
    doubling and addition maps and the published line functions.

    :param public: A public instance (see :mod:`trimap.trimap`).
    """
    ell = public.ell
    bits = _bits(ell)
    top = ell.bit_length() - 1
    lines = public.lines_for(P.space, Q.space)
    t = MillerTranscript(ell)
    one = public.params.one
    t.chain.append(P)
    for _ in range(top):
        t.chain.append(public.double_hat(t.chain[-1]))
    t.H.append(one)
    step = 0
    for i in range(top):
        factor = _check_factor(lines.h.evaluate([t.chain[i], Q]), step)
        t.H.append(t.H[-1] * t.H[-1] * factor)
        step += 1
    value = one
    for i in bits:
        value = value * t.H[i]
    acc = t.chain[bits[0]]
    for k in range(1, len(bits)):
        Pk = t.chain[bits[k]]
        t.corrections.append(acc)
        if k < len(bits) - 1:
            factor = lines.g.evaluate([acc, Pk, Q])
            acc = public.add_hat(acc, Pk)
        else:
            factor = lines.v.evaluate([acc, Q])
        factor = _check_factor(factor, step)
        t.G.append(factor)
        value = value * factor
        step += 1
    t.value = value
    return t


def blinded_pair(public, alpha_hat, beta_hat) -> FieldElement:
    """e-hat(alpha_hat, beta_hat), from public data only.

    On a zero denominator or zero line value, retries as
    e-hat([s] alpha_hat, beta_hat)^(s^-1).
    """
    one = public.params.one
    if public.is_identity(alpha_hat) or public.is_identity(beta_hat):
        return one
    ell = public.ell
    for attempt in attempts("blinded_pair", (DenominatorZero, PoleHit)):
        with attempt:
            s = 1 if attempt.index == 0 else public.rng.randrange(1, ell)
            x = alpha_hat if s == 1 else public.scalar_hat(alpha_hat, s)
            num = blinded_transcript(public, x, beta_hat).value
            den = blinded_transcript(public, beta_hat, x).value
            value = num / den
            if (ell * public.n) % 2:
                value = -value
            return value ** pow(s, -1, ell)


def blinded_pair_secret(secret, alpha_hat, beta_hat) -> FieldElement:
    """The product of the Weil pairings of the unblinded components.
    """
    E = secret.curve
    value = E.field.one
    for P, Q in zip(secret.unblind(alpha_hat), secret.unblind(beta_hat)):
        value = value * weil(E, P, Q)
    return value
