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

"""Trilinear-map instances.

An instance publishes two blinded torsion points alpha-hat and beta-hat, the
blinded addition and doubling maps, one blinded endomorphism phi-hat_i per
generator matrix M_i and the line functions the blinded pairing needs.
Scalars are encoded privately as non-commutative polynomials f in
F_ell<z_1, ..., z_N> with lambda(f) = a I, and evaluated publicly by
replacing z_i with phi-hat_i.
"""

from .blinding import (
    SPACE_E, SPACE_E_PRIME, BlindedPoint, BlindingKey, keygen, lift, rho,
)
from .curve import (
    O, CurveParams, CurveTransform, Point, add, double, find_desk_params,
    neg, scalar_mul, torsion_basis, torsion_points, TORSION_ATTEMPTS,
)
from .errors import (
    ContractViolation, DenominatorZero, ExceptionalPoint, ParameterError,
    SearchExhausted, SolveFailure, SpanFailure, TrimapFileNotFoundError,
    TrimapFileWriteError,
)
from .field import FieldElement, FieldParams, as_rng
from .local import (
    add_map, chord_function, double_map, generator_map, rational_function,
    tangent_function, vertical_function,
)
from .ncpoly import NCPoly
from .pairing import blinded_pair, blinded_pair_secret, weil
from .publisher import (
    DEFAULT_NOISE_TERMS, PublishedFunction, PublishedMap, publish_local_map,
    publish_product, publish_sum, publish_twisted,
)
from .retry import attempts
from . import linalg
from . import parser
from . import writer

from typing import Dict, List, Sequence, Tuple
import logging
import random
import sys

__version__ = "0.1.0"

logger = logging.getLogger(__name__)

DEFAULT_N = 2
DEFAULT_ELL = 5
DEFAULT_QMAX = 200
DEFAULT_DMAX = 4
DEFAULT_MIN_FIELD = 10000
DEFAULT_KERNEL_SAMPLES = 4
DEFAULT_PREFIX = "instance"

# Companion coefficients c_j of the generator rows.
COMPANION_COEFFS = (1, 2)


def _space(x) -> str:
    return getattr(x, "space", SPACE_E)


class GeneratorMatrix:
    """An n x n matrix over F_ell whose rows each hold two nonzero entries,
    one of them 1. For n = 1 the single entry is the companion coefficient.

    :param rows: One ``((column, coefficient), ...)`` tuple per row. Columns
      are 0-based.
    """
    def __init__(self, ell: int, rows):
        self.ell = ell
        self.rows = tuple(
            tuple((int(col), int(c) % ell) for col, c in row) for row in rows
        )
        n = len(self.rows)
        if n < 1:
            raise ParameterError("Generator matrix needs at least one row.")
        for row in self.rows:
            cols = [col for col, _ in row]
            if any(not 0 <= col < n for col in cols):
                raise ParameterError("Column out of range: {}".format(row))
            if len(set(cols)) != len(cols) or any(not c for _, c in row):
                raise ParameterError("Bad generator row: {}".format(row))
            if n == 1 and len(row) != 1:
                raise ParameterError("A 1 x 1 generator has one entry.")
            if n > 1 and (len(row) != 2 or all(c != 1 for _, c in row)):
                raise ParameterError(
                    "Generator rows need two nonzero entries, one of them 1."
                )
        if not linalg.determinant(self.matrix()):
            raise ParameterError(
                "Generator matrix is singular mod {}.".format(ell),
            )

    @property
    def n(self) -> int:
        return len(self.rows)

    def matrix(self, field: FieldParams = None) -> list:
        field = field or FieldParams.prime(self.ell)
        out = [[field.zero] * self.n for _ in range(self.n)]
        for j, row in enumerate(self.rows):
            for col, c in row:
                out[j][col] = field.element(c)
        return out

    def apply(self, E: CurveParams, points: Sequence[Point]) -> List[Point]:
        """The action on E^n: output j is sum_k M[j][k] P_k.
        """
        out = []
        for row in self.rows:
            total = O
            for col, c in row:
                total = add(E, total, scalar_mul(E, c, points[col]))
            out.append(total)
        return out

    @classmethod
    def random(cls, n: int, ell: int,
               rng: random.Random) -> "GeneratorMatrix":
        while True:
            if n == 1:
                rows = [((0, rng.choice(COMPANION_COEFFS)),)]
            else:
                rows = []
                for _ in range(n):
                    j1, j2 = rng.sample(range(n), 2)
                    rows.append(((j1, 1), (j2, rng.choice(COMPANION_COEFFS))))
            if _invertible(ell, rows):
                return cls(ell, rows)

    def __eq__(self, other):
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return self.ell == other.ell and self.rows == other.rows

    def __hash__(self):
        return hash((self.ell, self.rows))

    def __repr__(self):
        return "GeneratorMatrix({!r})".format(
            [[c.to_int() for c in row] for row in self.matrix()],
        )


def _invertible(ell, rows) -> bool:
    field = FieldParams.prime(ell)
    n = len(rows)
    matrix = [[field.zero] * n for _ in range(n)]
    for j, row in enumerate(rows):
        for col, c in row:
            matrix[j][col] = field.element(c)
    return bool(linalg.determinant(matrix))


def spanning_rank(generators: Sequence[GeneratorMatrix], ell: int) -> int:
    """The rank of the vectorized set {I, M_1, ..., M_N} over F_ell.
    """
    field = FieldParams.prime(ell)
    n = generators[0].n if generators else 1
    vectors = [[c for row in linalg.identity(field, n) for c in row]]
    for gen in generators:
        vectors.append([c for row in gen.matrix(field) for c in row])
    return linalg.rank(vectors)


def gen_generators(n: int, N: int, ell: int,
                   rng: random.Random) -> List[GeneratorMatrix]:
    """Samples N generator matrices such that I, M_1, ..., M_N span
    Mat_n(F_ell).

    :raises SpanFailure: If the retry budget runs out.
    """
    if n < 1:
        raise ParameterError("Locality count n must be at least 1.")
    if N < n * n - 1:
        raise ParameterError(
            "{} generators cannot span {}x{} matrices.".format(N, n, n),
        )
    rng = as_rng(rng)
    for attempt in attempts("gen_generators", SpanFailure):
        with attempt:
            gens = [GeneratorMatrix.random(n, ell, rng) for _ in range(N)]
            rank = spanning_rank(gens, ell)
            if rank != n * n:
                raise SpanFailure(
                    "Generators span only rank {} of {}".format(rank, n * n),
                )
            return gens


def scalar_chain(ops, x, k: int):
    """[k]x by double-and-add, low bit first, through the group operations
    of ``ops``.
    """
    k %= ops.ell
    result = ops.identity(_space(x))
    addend = x
    while k:
        if k & 1:
            result = ops.add_hat(result, addend)
        k >>= 1
        if k:
            addend = ops.double_hat(addend)
    return result


def encoding_order(f: NCPoly) -> list:
    """The terms of f in evaluation order: longest words first, then
    lexicographically, the constant last.
    """
    return sorted(f.terms.items(), key=lambda t: (-len(t[0]), t[0]))


def evaluate_word_poly(ops, f: NCPoly, y):
    """f(y): every word z_{i1}...z_{ik} acts as phi_{i1} o ... o phi_{ik},
    innermost first, and the terms are summed in :func:`encoding_order`.
    """
    total = ops.identity(_space(y))
    for word, c in encoding_order(f):
        z = y
        for i in reversed(word):
            z = ops.phi_hat(i - 1, z)
        total = ops.add_hat(total, scalar_chain(ops, z, c))
    return total


class LineFunctions:
    """The published tangent (h), chord (g) and vertical (v) products for
    one direction of the pairing.
    """
    def __init__(self, h: PublishedFunction, g: PublishedFunction,
                 v: PublishedFunction):
        self.h = h
        self.g = g
        self.v = v


class PublicInstance:
    """The public bundle. Everything here can be evaluated without secret
    data.

    :param identities: The blinded identity of each point space.
    :param lines: Maps (space of P, space of Q) to :class:`LineFunctions`.
    :param seed: Seeds the randomness used to re-route evaluations that
      hit a published denominator.
    """
    def __init__(self, params: FieldParams, ell: int, n: int, N: int,
                 ddh: bool, identities: Dict[str, BlindedPoint],
                 alpha_hat: BlindedPoint, beta_hat: BlindedPoint,
                 add_maps: Dict[str, PublishedMap],
                 double_maps: Dict[str, PublishedMap],
                 phi_maps: Sequence[PublishedMap],
                 lines: Dict[Tuple[str, str], LineFunctions],
                 zeta: FieldElement = None, kernel: Sequence[NCPoly] = (),
                 seed: int = 0):
        self.params = params
        self.ell = ell
        self.n = n
        self.N = N
        self.ddh = ddh
        self.identities = dict(identities)
        self.alpha_hat = alpha_hat
        self.beta_hat = beta_hat
        self.add_maps = dict(add_maps)
        self.double_maps = dict(double_maps)
        self.phi_maps = list(phi_maps)
        self.lines = dict(lines)
        self.zeta = zeta
        self.kernel = list(kernel)
        self.rng = random.Random(seed)
        self._multiples = {}
        self._phi_base = {}

    @classmethod
    def from_sections(cls, sections: dict) -> "PublicInstance":
        lines = {
            direction: LineFunctions(fns["h"], fns["g"], fns["v"])
            for direction, fns in sections["lines"].items()
        }
        return cls(
            sections["params"], sections["ell"], sections["n"],
            sections["N"], sections["ddh"], sections["identities"],
            sections["alpha_hat"], sections["beta_hat"],
            sections["add_maps"], sections["double_maps"],
            sections["phi_maps"], lines, sections["zeta"],
            sections["kernel"],
        )

    @property
    def spaces(self) -> Tuple[str, ...]:
        return (SPACE_E, SPACE_E_PRIME) if self.ddh else (SPACE_E,)

    @property
    def alpha_space(self) -> str:
        return SPACE_E_PRIME if self.ddh else SPACE_E

    def identity(self, space: str = SPACE_E) -> BlindedPoint:
        try:
            return self.identities[space]
        except KeyError as e:
            raise ContractViolation(
                "This instance has no {} space.".format(space),
            ) from e

    def is_identity(self, x: BlindedPoint) -> bool:
        return x == self.identity(x.space)

    def base(self, space: str) -> BlindedPoint:
        """The point whose multiples re-route failed evaluations.
        """
        return self.alpha_hat if space == SPACE_E_PRIME else self.beta_hat

    def _add_once(self, x, y):
        if self.is_identity(x):
            return y
        if self.is_identity(y):
            return x
        if x == y:
            return self._double_once(x)
        coords = self.add_maps[x.space].evaluate([x, y])
        return BlindedPoint(coords, x.space)

    def _double_once(self, x):
        if self.is_identity(x):
            return x
        return BlindedPoint(self.double_maps[x.space].evaluate([x]), x.space)

    def multiple(self, space: str, k: int) -> BlindedPoint:
        """[k] times :meth:`base`, from a table built on first use.
        """
        table = self._multiples.get(space)
        if table is None:
            base = self.base(space)
            table = [self.identity(space), base]
            for m in range(2, self.ell):
                table.append(self._split_sum(table, m))
            self._multiples[space] = table
        return table[k % self.ell]

    def _split_sum(self, table, m):
        last = None
        for i in range(1, m // 2 + 1):
            try:
                return self._add_once(table[i], table[m - i])
            except DenominatorZero as e:
                last = e
        raise last

    def add_hat(self, x: BlindedPoint, y: BlindedPoint) -> BlindedPoint:
        """x + y through the published addition map; equal arguments go to
        the doubling map. A vanishing denominator is avoided by adding
        (x + r) + (y - r) for a random multiple r of the base point.
        """
        if x.space != y.space:
            raise ContractViolation(
                "Cannot add points of {} and {}.".format(x.space, y.space),
            )
        for attempt in attempts("add_hat", DenominatorZero):
            with attempt:
                if attempt.index == 0:
                    return self._add_once(x, y)
                t = self.rng.randrange(1, self.ell)
                left = self._add_once(x, self.multiple(x.space, t))
                right = self._add_once(y, self.multiple(x.space, -t))
                return self._add_once(left, right)

    def double_hat(self, x: BlindedPoint) -> BlindedPoint:
        for attempt in attempts("double_hat", DenominatorZero):
            with attempt:
                if attempt.index == 0:
                    return self._double_once(x)
                t = self.rng.randrange(1, self.ell)
                left = self._add_once(x, self.multiple(x.space, t))
                right = self._add_once(x, self.multiple(x.space, -t))
                return self._add_once(left, right)

    def scalar_hat(self, x: BlindedPoint, k: int) -> BlindedPoint:
        return scalar_chain(self, x, k)

    def _phi_once(self, i, z):
        if self.is_identity(z):
            return z
        return BlindedPoint(self.phi_maps[i].evaluate([z]), SPACE_E)

    def phi_base(self, i: int) -> BlindedPoint:
        if i not in self._phi_base:
            self._phi_base[i] = self._phi_once(i, self.beta_hat)
        return self._phi_base[i]

    def phi_hat(self, i: int, z: BlindedPoint) -> BlindedPoint:
        """phi-hat_i(z), with ``i`` 0-based. On a vanishing denominator,
        computes phi-hat_i(z + r) + [ell - t] phi-hat_i(beta-hat) for
        r = [t] beta-hat.
        """
        if not 0 <= i < self.N:
            raise ParameterError("No generator {}".format(i + 1))
        if z.space != SPACE_E:
            raise ContractViolation("The maps phi-hat_i act on E only.")
        for attempt in attempts("apply_phi", DenominatorZero):
            with attempt:
                if attempt.index == 0:
                    return self._phi_once(i, z)
                t = self.rng.randrange(1, self.ell)
                shifted = self.add_hat(z, self.multiple(SPACE_E, t))
                correction = self.scalar_hat(self.phi_base(i), self.ell - t)
                return self.add_hat(self._phi_once(i, shifted), correction)

    def lines_for(self, space_p: str, space_q: str) -> LineFunctions:
        try:
            return self.lines[(space_p, space_q)]
        except KeyError as e:
            raise ContractViolation(
                "No pairing functions from {} to {}.".format(
                    space_p, space_q,
                )
            ) from e

    def pair(self, x: BlindedPoint, y: BlindedPoint) -> FieldElement:
        return blinded_pair(self, x, y)

    def evaluate_encoding(self, f: NCPoly, y: BlindedPoint) -> BlindedPoint:
        return evaluate_word_poly(self, f, y)

    def tri_eval(self, x: BlindedPoint, y: BlindedPoint,
                 f: NCPoly) -> FieldElement:
        """e-hat(x, f(y)).

        :raises ContractViolation: If f does not have the encoding shape.
        """
        if f.ell != self.ell or not f.has_encoding_shape(self.n):
            raise ContractViolation(
                "Encoded scalars are a linear polynomial plus one word of "
                "length {}.".format(self.n)
            )
        return self.pair(x, self.evaluate_encoding(f, y))

    def discrete_log(self, value: FieldElement):
        """The exponent k in [0, ell) with zeta^k = value, or ``None``.
        """
        power = self.params.one
        for k in range(self.ell):
            if power == value:
                return k
            power = power * self.zeta
        return None


class SecretInstance:
    """The secret bundle: the curve, the transforms and keys of each point
    space, the generator matrices and the unblinded alpha and beta.
    """
    def __init__(self, curve: CurveParams, basis: Tuple[Point, Point],
                 transforms: Dict[str, List[CurveTransform]],
                 keys: Dict[str, BlindingKey],
                 generators: Sequence[GeneratorMatrix],
                 alpha: Sequence[Point], beta: Sequence[Point]):
        self.curve = curve
        self.basis = tuple(basis)
        self.transforms = {s: list(t) for s, t in transforms.items()}
        self.keys = dict(keys)
        self.generators = list(generators)
        self.alpha = list(alpha)
        self.beta = list(beta)

    @classmethod
    def from_sections(cls, sections: dict) -> "SecretInstance":
        ell = sections["curve"].ell
        return cls(
            sections["curve"], sections["basis"], sections["transforms"],
            sections["keys"],
            [GeneratorMatrix(ell, rows) for rows in sections["generators"]],
            sections["alpha"], sections["beta"],
        )

    @property
    def params(self) -> FieldParams:
        return self.curve.field

    @property
    def ell(self) -> int:
        return self.curve.ell

    @property
    def n(self) -> int:
        return len(self.beta)

    @property
    def N(self) -> int:
        return len(self.generators)

    @property
    def ddh(self) -> bool:
        return SPACE_E_PRIME in self.keys

    @property
    def alpha_space(self) -> str:
        return SPACE_E_PRIME if self.ddh else SPACE_E

    def unblind(self, x: BlindedPoint) -> List[Point]:
        key = self.keys[x.space]
        return [
            T.transport_inv(v)
            for T, v in zip(self.transforms[x.space], rho(key, x.coords))
        ]

    def blind(self, points: Sequence[Point],
              space: str = SPACE_E) -> BlindedPoint:
        local = [
            T.transport(P) for T, P in zip(self.transforms[space], points)
        ]
        return BlindedPoint(lift(self.keys[space], local), space)

    def lam(self, f: NCPoly) -> list:
        """lambda(f): f with z_i replaced by M_i, over F_ell.
        """
        field = FieldParams.prime(self.ell)
        return f.evaluate_matrices(
            field, [g.matrix(field) for g in self.generators],
        )

    def act(self, f: NCPoly, points: Sequence[Point]) -> List[Point]:
        """f acting on E^n through the generator matrices.
        """
        return evaluate_word_poly(_Simulation(self, strict=False), f,
                                  tuple(points))

    def check_evaluable(self, f: NCPoly):
        """Replays the public evaluation of f(beta-hat) on the unblinded
        side.

        :raises ExceptionalPoint: If some published map would be fed a
          point with an identity or repeated locality.
        """
        evaluate_word_poly(_Simulation(self), f, tuple(self.beta))


class _Simulation:
    """The group operations of :class:`PublicInstance`, replayed on tuples
    of E-points. When ``strict``, raises :class:`ExceptionalPoint` wherever
    a published map would meet a partial identity or a partial equality.
    """
    def __init__(self, secret: SecretInstance, strict: bool = True):
        self.E = secret.curve
        self.ell = secret.ell
        self.n = secret.n
        self.generators = secret.generators
        self.strict = strict

    def identity(self, space=SPACE_E):
        return (O,) * self.n

    def is_identity(self, x) -> bool:
        return all(P.is_infinity for P in x)

    def _checked(self, points) -> tuple:
        points = tuple(points)
        if self.strict and not self.is_identity(points):
            if any(P.is_infinity for P in points):
                raise ExceptionalPoint("Intermediate point is partly O.")
        return points

    def add_hat(self, x, y):
        if self.is_identity(x):
            return y
        if self.is_identity(y):
            return x
        if x == y:
            return self.double_hat(x)
        if self.strict:
            for P, Q in zip(x, y):
                if P.is_infinity or Q.is_infinity or P == Q:
                    raise ExceptionalPoint("Addition meets equal localities.")
        return self._checked(add(self.E, P, Q) for P, Q in zip(x, y))

    def double_hat(self, x):
        if self.is_identity(x):
            return x
        if self.strict and any(P.is_infinity for P in x):
            raise ExceptionalPoint("Doubling a point that is partly O.")
        return self._checked(double(self.E, P) for P in x)

    def phi_hat(self, i, z):
        if self.is_identity(z):
            return z
        gen = self.generators[i]
        if self.strict:
            for row in gen.rows:
                if len(row) != 2:
                    continue
                (j1, _), (j2, c) = row
                P, Q = z[j1], scalar_mul(self.E, c, z[j2])
                if P.is_infinity or z[j2].is_infinity or P == Q:
                    raise ExceptionalPoint(
                        "Generator sum meets equal localities.",
                    )
        return self._checked(gen.apply(self.E, z))


class TrimapInstance:
    """A public bundle, with its secret bundle when available.
    """
    def __init__(self, public: PublicInstance, secret: SecretInstance = None):
        self.public = public
        self.secret = secret

    def require_secret(self) -> SecretInstance:
        if self.secret is None:
            raise ContractViolation("This operation needs the secret file.")
        return self.secret


def _secret_of(instance) -> SecretInstance:
    if isinstance(instance, SecretInstance):
        return instance
    return instance.require_secret()


def _public_of(instance) -> PublicInstance:
    return getattr(instance, "public", instance)


def apply_phi(instance, i: int, x: BlindedPoint) -> BlindedPoint:
    """phi-hat_i(x) from public data; ``i`` is 0-based.
    """
    return _public_of(instance).phi_hat(i, x)


def add_hat(instance, x: BlindedPoint, y: BlindedPoint) -> BlindedPoint:
    return _public_of(instance).add_hat(x, y)


def tri_eval(instance, x: BlindedPoint, y: BlindedPoint,
             f: NCPoly) -> FieldElement:
    return _public_of(instance).tri_eval(x, y, f)


def encode(instance, a: int, rng: random.Random) -> NCPoly:
    """Encodes a as f = c z_{i1}...z_{in} + sum_i b_i z_i + b_0 with
    lambda(f) = a I, for a random word and a random c != 0. Encodings whose
    public evaluation would meet an exceptional point are resampled.

    :raises SolveFailure: If the retry budget runs out.
    """
    secret = _secret_of(instance)
    rng = as_rng(rng)
    ell, n, N = secret.ell, secret.n, secret.N
    field = FieldParams.prime(ell)
    mats = [linalg.identity(field, n)]
    mats.extend(g.matrix(field) for g in secret.generators)
    system = [
        [m[r][s] for m in mats] for r in range(n) for s in range(n)
    ]
    a = int(a) % ell
    for attempt in attempts("encode", (SolveFailure, ExceptionalPoint)):
        with attempt:
            word = tuple(rng.randrange(1, N + 1) for _ in range(n))
            c = rng.randrange(1, ell)
            product = linalg.identity(field, n)
            for i in word:
                product = linalg.matmul(product, mats[i])
            rhs = [
                field.element(a * (r == s)) - product[r][s] * c
                for r in range(n) for s in range(n)
            ]
            solution, kernel = linalg.solve(system, rhs)
            for vec in kernel:
                t = field.random_element(rng)
                solution = [x + v * t for x, v in zip(solution, vec)]
            terms = {word: c}
            for k, b in enumerate(solution):
                key = () if k == 0 else (k,)
                terms[key] = terms.get(key, 0) + b.to_int()
            f = NCPoly(ell, terms)
            if not f.has_encoding_shape(n):
                raise SolveFailure("Encoding lost its word of length n.")
            secret.check_evaluable(f)
            return f


def gen_kernel_samples(instance, count: int,
                       rng: random.Random) -> List[NCPoly]:
    """``count`` distinct encodings of 0.
    """
    rng = as_rng(rng)
    samples = []
    for _ in range(count):
        f = encode(instance, 0, rng)
        for _ in range(TORSION_ATTEMPTS):
            if f not in samples:
                break
            f = encode(instance, 0, rng)
        samples.append(f)
    return samples


def dlp_challenge(instance, rng: random.Random) -> Tuple[NCPoly, int]:
    """Returns an encoding f of a uniform secret a, and a.
    """
    rng = as_rng(rng)
    a = rng.randrange(_secret_of(instance).ell)
    return encode(instance, a, rng), a


def solve_dlp_trapdoor(instance, f: NCPoly) -> int:
    """Reads a off lambda(f) = a I.
    """
    matrix = _secret_of(instance).lam(f)
    a = matrix[0][0]
    for r, row in enumerate(matrix):
        for s, x in enumerate(row):
            if x != (a if r == s else a.field.zero):
                raise ContractViolation("f does not encode a scalar.")
    return a.to_int()


def check_dlp_answer(instance, f: NCPoly, a: int) -> bool:
    """Whether f(beta-hat) = [a] beta-hat.
    """
    public = _public_of(instance)
    image = public.evaluate_encoding(f, public.beta_hat)
    return image == public.scalar_hat(public.beta_hat, a)


def solve_dlp_brute_force(instance, f: NCPoly) -> int:
    """Searches a with f(beta-hat) = [a] beta-hat. Desk scale only.
    """
    public = _public_of(instance)
    image = public.evaluate_encoding(f, public.beta_hat)
    point = public.identity(SPACE_E)
    for a in range(public.ell):
        if point == image:
            return a
        point = public.add_hat(point, public.beta_hat)
    return None


def solve_dlp_pairing(instance, f: NCPoly) -> int:
    """e-hat(alpha-hat, f(beta-hat)) = zeta^a, then an index search.
    """
    public = _public_of(instance)
    return public.discrete_log(
        public.tri_eval(public.alpha_hat, public.beta_hat, f),
    )


def _random_torsion(E, basis, rng) -> Point:
    P1, P2 = basis
    while True:
        i, k = rng.randrange(E.ell), rng.randrange(E.ell)
        if i or k:
            return add(E, scalar_mul(E, i, P1), scalar_mul(E, k, P2))


def _rows_generic(E, points, generators) -> bool:
    for gen in generators:
        for row in gen.rows:
            if len(row) != 2:
                continue
            (j1, _), (j2, c) = row
            Q = scalar_mul(E, c, points[j2])
            if points[j1] in (Q, neg(E, Q)):
                return False
    return True


def _choose_alpha_beta(E, basis, generators, n, ddh, rng):
    one = E.field.one
    for _ in range(TORSION_ATTEMPTS):
        alpha = [_random_torsion(E, basis, rng) for _ in range(n)]
        beta = [_random_torsion(E, basis, rng) for _ in range(n)]
        values = [weil(E, P, Q, rng) for P, Q in zip(alpha, beta)]
        if any(v == one for v in values):
            continue
        zeta = one
        for v in values:
            zeta = zeta * v
        if zeta == one:
            continue
        if not _rows_generic(E, beta, generators):
            continue
        if not ddh and not _rows_generic(E, alpha, generators):
            continue
        return alpha, beta
    raise SearchExhausted("Could not choose alpha and beta.")


def _transform(params, torsion, rng) -> CurveTransform:
    while True:
        T = CurveTransform.random(params, rng)
        if T.maps_identity and T.valid_for(torsion):
            return T


def _publish_lines(secret, space_p, space_q, rng, noise_terms):
    E = secret.curve
    Tp = secret.transforms[space_p]
    Tq = secret.transforms[space_q]
    kp, kq = secret.keys[space_p], secret.keys[space_q]
    n = secret.n

    def product(hidden, keys, spaces):
        return publish_product(
            hidden, keys, rng, form="program", spaces=spaces,
            noise_terms=noise_terms,
        )
    h = product(
        [tangent_function(Tp[j], Tq[j], E.a, j) for j in range(n)],
        [kp, kq], (space_p, space_q),
    )
    g = product(
        [chord_function(Tp[j], Tq[j], j) for j in range(n)],
        [kp, kp, kq], (space_p, space_p, space_q),
    )
    v = product(
        [vertical_function(Tp[j], Tq[j], j) for j in range(n)],
        [kp, kq], (space_p, space_q),
    )
    return LineFunctions(h, g, v)


def _publish_phi(secret, gen, rng, noise_terms) -> PublishedMap:
    E = secret.curve
    transforms = secret.transforms[SPACE_E]
    maps = [
        generator_map(transforms, E.a, j, row)
        for j, row in enumerate(gen.rows)
    ]
    return publish_local_map(
        maps, secret.keys[SPACE_E], rng, spaces=(SPACE_E,),
        out_space=SPACE_E, noise_terms=noise_terms,
    )


def publish_instance(secret: SecretInstance, rng: random.Random,
                     noise_terms: int = DEFAULT_NOISE_TERMS
                     ) -> PublicInstance:
    """Publishes the blinded points, maps and line functions of a secret
    bundle, and computes zeta publicly.
    """
    E = secret.curve
    spaces = [SPACE_E, SPACE_E_PRIME] if secret.ddh else [SPACE_E]
    identities = {s: secret.blind([O] * secret.n, s) for s in spaces}
    add_maps = {}
    double_maps = {}
    for s in spaces:
        transforms = secret.transforms[s]
        add_maps[s] = publish_local_map(
            [add_map(T, j) for j, T in enumerate(transforms)],
            secret.keys[s], rng, spaces=(s, s), out_space=s,
            noise_terms=noise_terms,
        )
        double_maps[s] = publish_local_map(
            [double_map(T, E.a, j) for j, T in enumerate(transforms)],
            secret.keys[s], rng, spaces=(s,), out_space=s,
            noise_terms=noise_terms,
        )
        logger.info("Published the group law on %s", s)
    phi_maps = [
        _publish_phi(secret, gen, rng, noise_terms)
        for gen in secret.generators
    ]
    logger.info("Published %d endomorphisms", len(phi_maps))
    if secret.ddh:
        directions = [(SPACE_E_PRIME, SPACE_E), (SPACE_E, SPACE_E_PRIME)]
    else:
        directions = [(SPACE_E, SPACE_E)]
    lines = {
        (sp, sq): _publish_lines(secret, sp, sq, rng, noise_terms)
        for sp, sq in directions
    }
    public = PublicInstance(
        E.field, secret.ell, secret.n, secret.N, secret.ddh, identities,
        secret.blind(secret.alpha, secret.alpha_space),
        secret.blind(secret.beta, SPACE_E),
        add_maps, double_maps, phi_maps, lines,
    )
    for i, gen in enumerate(secret.generators):
        for attempt in attempts("publish_phi", DenominatorZero):
            with attempt:
                public.phi_base(i)
                break
            public.phi_maps[i] = _publish_phi(secret, gen, rng, noise_terms)
    public.zeta = public.pair(public.alpha_hat, public.beta_hat)
    hidden = blinded_pair_secret(secret, public.alpha_hat, public.beta_hat)
    if public.zeta != hidden:
        raise ContractViolation(
            "Published pairing disagrees with the hidden one.",
        )
    return public


def setup(n: int = DEFAULT_N, ell: int = DEFAULT_ELL, N: int = None,
          qmax: int = DEFAULT_QMAX, dmax: int = DEFAULT_DMAX,
          min_field_size: int = DEFAULT_MIN_FIELD, ddh: bool = False,
          seed=0, kernel_count: int = DEFAULT_KERNEL_SAMPLES,
          noise_terms: int = DEFAULT_NOISE_TERMS) -> TrimapInstance:
    """Builds a complete instance. The same arguments always give the same
    instance.

    :param N: The number of generators; defaults to n^2 + 1.
    :param ddh: Blind alpha on E' under an independent key.
    :raises SearchExhausted: If no curve exists within the bounds.
    """
    if n < 1:
        raise ParameterError("Locality count n must be at least 1.")
    if ell % 2 == 0:
        raise ParameterError("Instances need an odd prime ell.")
    N = n * n + 1 if N is None else N
    rng = as_rng(seed)
    params, E = find_desk_params(ell, qmax, dmax, rng, min_field_size)
    basis = torsion_basis(E, rng)
    torsion = torsion_points(E, basis)
    generators = gen_generators(n, N, ell, rng)
    spaces = [SPACE_E, SPACE_E_PRIME] if ddh else [SPACE_E]
    transforms = {
        s: [_transform(params, torsion, rng) for _ in range(n)]
        for s in spaces
    }
    keys = {s: keygen(n, params, False, rng) for s in spaces}
    alpha, beta = _choose_alpha_beta(E, basis, generators, n, ddh, rng)
    secret = SecretInstance(
        E, basis, transforms, keys, generators, alpha, beta,
    )
    logger.info("Chose the secret bundle; publishing")
    public = publish_instance(secret, rng, noise_terms)
    instance = TrimapInstance(public, secret)
    public.kernel = gen_kernel_samples(instance, kernel_count, rng)
    logger.info("Instance ready: zeta = %r", public.zeta)
    return instance


def publish_hidden(instance, mode: str, hidden, rng: random.Random,
                   twisted: bool = False, space: str = SPACE_E,
                   noise_terms: int = DEFAULT_NOISE_TERMS
                   ) -> PublishedFunction:
    """Publishes a user-supplied sum or product of local rational
    functions against the instance key of ``space``. With ``twisted``,
    random twists are applied to the key first.
    """
    secret = _secret_of(instance)
    rng = as_rng(rng)
    key = secret.keys[space]
    if twisted:
        d = key.params.d
        key = key.with_twists([
            (rng.randrange(d), rng.randrange(d)) for _ in range(key.n)
        ])
        return publish_twisted(hidden, key, rng, mode, noise_terms)
    publish = publish_sum if mode == "sum" else publish_product
    arity = 1 + max(p for piece in hidden for p, _ in piece.reads)
    return publish(
        hidden, key, rng, spaces=(space,) * arity, noise_terms=noise_terms,
    )


def _read_file(path):
    if path is None:
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as f:
            return f.read()
    except FileNotFoundError as e:
        raise TrimapFileNotFoundError.from_filename(path) from e


def _open_outfile(path):
    try:
        return open(path, "wb")
    except (FileNotFoundError, PermissionError) as e:
        raise TrimapFileWriteError.from_filename(path) from e


def _write_output(path, text: str):
    data = text.encode()
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with _open_outfile(path) as f:
        f.write(data)


def public_path(prefix: str) -> str:
    return prefix + ".pub"


def secret_path(prefix: str) -> str:
    return prefix + ".sec"


def load_public(path: str) -> PublicInstance:
    return PublicInstance.from_sections(parser.parse_public(_read_file(path)))


def load_secret(path: str) -> SecretInstance:
    return SecretInstance.from_sections(parser.parse_secret(_read_file(path)))


def load_instance(prefix: str, with_secret: bool = True) -> TrimapInstance:
    public = load_public(public_path(prefix))
    secret = load_secret(secret_path(prefix)) if with_secret else None
    return TrimapInstance(public, secret)


class SetupOpts:
    """Options for creating an instance.

    Separate from command-line options; see `ParsedArgs`.
    """
    def __init__(self):
        # Number of localities.
        self.n: int = DEFAULT_N
        self.ell: int = DEFAULT_ELL
        # Number of generator matrices; None means n^2 + 1.
        self.N: int = None
        self.qmax: int = DEFAULT_QMAX
        self.dmax: int = DEFAULT_DMAX
        # Smallest accepted field size |K|.
        self.min_field_size: int = DEFAULT_MIN_FIELD
        self.ddh: bool = False
        self.seed: int = None
        self.kernel_count: int = DEFAULT_KERNEL_SAMPLES
        self.noise_terms: int = DEFAULT_NOISE_TERMS
        # Instance files are written to <prefix>.pub and <prefix>.sec.
        self.prefix: str = DEFAULT_PREFIX


class EncodeOpts:
    def __init__(self):
        # Instance files are read from <prefix>.pub and <prefix>.sec.
        self.prefix: str = DEFAULT_PREFIX
        # The scalar to encode.
        self.a: int = None
        self.seed: int = None
        # If None, the encoding is written to standard output.
        self.outpath: str = None


class EvalOpts:
    def __init__(self):
        self.prefix: str = DEFAULT_PREFIX
        self.a: int = None
        self.b: int = None
        # Path to the encoded scalar. If None, read from standard input.
        self.encoding_path: str = None
        self.outpath: str = None


class PublishOpts:
    def __init__(self):
        self.prefix: str = DEFAULT_PREFIX
        # Path to the hidden function. If None, read from standard input.
        self.hidden_path: str = None
        self.twisted: bool = False
        # Point space of every argument ("E" or "E'").
        self.space: str = SPACE_E
        self.seed: int = None
        self.noise_terms: int = DEFAULT_NOISE_TERMS
        self.outpath: str = None


class VerifyOpts:
    def __init__(self):
        self.prefix: str = DEFAULT_PREFIX
        # Suite names; None runs every suite the available files allow.
        self.checks: List[str] = None
        self.seed: int = 0
        # Run the exhaustive variants of the suites.
        self.full: bool = False
        self.outpath: str = None


class DlpOpts:
    def __init__(self):
        self.prefix: str = DEFAULT_PREFIX
        self.seed: int = None
        # If set, solve this challenge instead of creating one.
        self.solve_path: str = None
        # Solve from the public file only.
        self.public: bool = False
        self.outpath: str = None


def _require_seed(seed):
    if seed is None:
        raise ParameterError("A seed is required (--seed).")
    return seed


def generate_instance(opts: SetupOpts) -> TrimapInstance:
    """Runs setup and writes <prefix>.pub and <prefix>.sec.
    """
    instance = setup(
        n=opts.n, ell=opts.ell, N=opts.N, qmax=opts.qmax, dmax=opts.dmax,
        min_field_size=opts.min_field_size, ddh=opts.ddh,
        seed=_require_seed(opts.seed), kernel_count=opts.kernel_count,
        noise_terms=opts.noise_terms,
    )
    _write_output(
        public_path(opts.prefix), writer.write_public(instance.public),
    )
    _write_output(
        secret_path(opts.prefix), writer.write_secret(instance.secret),
    )
    return instance


def encode_scalar(opts: EncodeOpts) -> NCPoly:
    secret = load_secret(secret_path(opts.prefix))
    f = encode(secret, opts.a, as_rng(_require_seed(opts.seed)))
    _write_output(opts.outpath, writer.write_ncpoly(f))
    return f


def evaluate_trilinear(opts: EvalOpts):
    """Computes e-hat([a] alpha-hat, f([b] beta-hat)) from the public file
    alone, and writes the value and its exponent.

    :returns: The value and the exponent.
    """
    public = load_public(public_path(opts.prefix))
    f = parser.parse_ncpoly(_read_file(opts.encoding_path), public.ell)
    x = public.scalar_hat(public.alpha_hat, opts.a)
    y = public.scalar_hat(public.beta_hat, opts.b)
    value = public.tri_eval(x, y, f)
    exponent = public.discrete_log(value)
    _write_output(opts.outpath, writer.write_eval_result(value, exponent))
    return value, exponent


def publish_function(opts: PublishOpts) -> PublishedFunction:
    secret = load_secret(secret_path(opts.prefix))
    mode, hidden = parser.parse_hidden(
        _read_file(opts.hidden_path), secret.params,
    )
    hidden = [rational_function(reads, fn) for reads, fn in hidden]
    pf = publish_hidden(
        secret, mode, hidden, as_rng(_require_seed(opts.seed)),
        twisted=opts.twisted, space=opts.space,
        noise_terms=opts.noise_terms,
    )
    _write_output(opts.outpath, writer.write_function_file(
        pf, secret.params,
    ))
    return pf


def dlp(opts: DlpOpts):
    """Creates a discrete-log challenge, or solves one.

    :returns: The answer (hidden answer when creating a challenge).
    """
    if opts.solve_path is None:
        secret = load_secret(secret_path(opts.prefix))
        f, a = dlp_challenge(secret, as_rng(_require_seed(opts.seed)))
        logger.info("Challenge answer: %d", a)
        _write_output(opts.outpath, writer.write_ncpoly(f))
        return a
    if opts.public:
        public = load_public(public_path(opts.prefix))
        f = parser.parse_ncpoly(_read_file(opts.solve_path), public.ell)
        a = solve_dlp_pairing(public, f)
    else:
        try:
            secret = load_secret(secret_path(opts.prefix))
        except TrimapFileNotFoundError as e:
            raise ContractViolation(
                "Solving needs the secret file ({}); use --public for the "
                "pairing-assisted solver.".format(secret_path(opts.prefix))
            ) from e
        f = parser.parse_ncpoly(_read_file(opts.solve_path), secret.ell)
        a = solve_dlp_trapdoor(secret, f)
    _write_output(opts.outpath, "answer {}\n".format(
        "none" if a is None else a,
    ))
    return a
