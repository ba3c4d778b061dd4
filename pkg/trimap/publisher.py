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

"""Publication of hidden semi-local functions and bounded-locality maps.

A hidden function is a sum (or product) of local rational functions of the
values rho_l(w_p). Publication rewrites every piece over the coordinates of
W, hides it behind telescoping linear forms and adds noise from the ideal
of ambivalence, so that each published piece differs from every hidden one
while the total agrees on W.

Pieces are published either in term form (lists of monomials) or, when
their degree is too large to expand, as one straight-line program.
"""

from .blinding import BlindingKey, is_on_W, sample_W
from .errors import (
    ContractViolation, DenominatorZero, LinearFormDegenerate, ParameterError,
)
from .field import FieldElement
from .local import LocalFunction, LocalMap, mu_fractions
from .poly import (
    AmbivalenceIdeal, DescentPoly, MultiPoly, coset_sample, descend_point,
    descent_reduce, frobenius_coeffs, sample_ideal_element,
)
from .program import Program, ProgramBuilder, Wire
from .retry import get_retry_budget
from math import comb
from typing import List, Sequence
import logging
import random

logger = logging.getLogger(__name__)

MODES = ("sum", "product")
FORMS = ("terms", "program")
TEST_POINTS = 8
DEFAULT_NOISE_TERMS = 3


def _degree(x) -> int:
    if isinstance(x, MultiPoly):
        return x.degree()
    if isinstance(x, Wire):
        return x.degree
    return 0


def _flatten(points) -> list:
    flat = []
    for p in points:
        flat.extend(getattr(p, "coords", p))
    return flat


def _check_spaces(spaces, points):
    if spaces is None:
        return
    for expected, p in zip(spaces, points):
        space = getattr(p, "space", None)
        if space is not None and space != expected:
            raise ContractViolation(
                "Point lives on {}, but the function expects {}.".format(
                    space, expected,
                )
            )


def _combine(mode: str, values) -> FieldElement:
    total = None
    for g, h in values:
        if not h:
            raise DenominatorZero(
                "Published denominator vanishes; re-randomize the input."
            )
        v = g / h
        if total is None:
            total = v
        elif mode == "sum":
            total = total + v
        else:
            total = total * v
    return total


class PublishedFunction:
    """A public sum or product of pieces g_i / h_i.

    The pieces are either polynomials (``pieces``) or consecutive output
    pairs ``g_1, h_1, g_2, h_2, ...`` of ``program`` starting at ``start``.

    :param nvars: The total number of input coordinates (arity blocks of 3n,
      times d when twisted).
    :param spaces: Optional point-space tag per argument.
    """
    def __init__(self, mode: str, arity: int, nvars: int, pieces=None,
                 program: Program = None, start: int = 0, m: int = None,
                 twisted: bool = False, spaces=None):
        if mode not in MODES:
            raise ParameterError("Unknown publication mode: {}".format(mode))
        if (pieces is None) == (program is None):
            raise ParameterError("Give either pieces or a program.")
        self.mode = mode
        self.arity = arity
        self.nvars = nvars
        self.pieces = None if pieces is None else [tuple(p) for p in pieces]
        self.program = program
        self.start = start
        if m is None:
            m = len(self.pieces) if pieces is not None else (
                (len(program.outputs) - start) // 2
            )
        self.m = m
        self.twisted = twisted
        self.spaces = None if spaces is None else tuple(spaces)

    @property
    def form(self) -> str:
        return "terms" if self.pieces is not None else "program"

    def piece_values(self, point: Sequence[FieldElement],
                     outputs: list = None) -> list:
        """(g_i, h_i) values at a flat input point.

        :param outputs: Precomputed program outputs, if available.
        """
        if len(point) != self.nvars:
            raise ParameterError("Expected {} input coordinates".format(
                self.nvars,
            ))
        if self.pieces is not None:
            return [(g.evaluate(point), h.evaluate(point))
                    for g, h in self.pieces]
        if outputs is None:
            outputs = self.program.evaluate(point)
        out = outputs[self.start:self.start + 2 * self.m]
        return list(zip(out[0::2], out[1::2]))

    def evaluate(self, points) -> FieldElement:
        """Evaluates at ``arity`` points (flat coordinate sequences or
        objects with ``coords``).

        :raises DenominatorZero: If a published denominator vanishes.
        """
        points = list(points)
        _check_spaces(self.spaces, points)
        return _combine(self.mode, self.piece_values(_flatten(points)))

    def degree(self) -> int:
        if self.pieces is not None:
            return max(max(_degree(g), _degree(h)) for g, h in self.pieces)
        degrees = self.program.degrees()
        return max(degrees[self.start:self.start + 2 * self.m])

    def __repr__(self):
        return "PublishedFunction({}, {} pieces, arity {}, {})".format(
            self.mode, self.m, self.arity, self.form,
        )


class PublishedMap:
    """A public map W^arity -> W: 3n published sums sharing one program.

    :param counts: The number of pieces of each output coordinate.
    """
    def __init__(self, arity: int, nvars: int, program: Program,
                 counts: Sequence[int], spaces=None, out_space=None):
        self.arity = arity
        self.nvars = nvars
        self.program = program
        self.counts = tuple(counts)
        self.spaces = None if spaces is None else tuple(spaces)
        self.out_space = out_space
        self.coordinates = []
        start = 0
        for m in self.counts:
            self.coordinates.append(PublishedFunction(
                "sum", arity, nvars, program=program, start=start, m=m,
                spaces=spaces,
            ))
            start += 2 * m

    def evaluate(self, points) -> List[FieldElement]:
        points = list(points)
        _check_spaces(self.spaces, points)
        flat = _flatten(points)
        if len(flat) != self.nvars:
            raise ParameterError("Expected {} input coordinates".format(
                self.nvars,
            ))
        outputs = self.program.evaluate(flat)
        return [
            _combine("sum", pf.piece_values(flat, outputs))
            for pf in self.coordinates
        ]

    def __repr__(self):
        return "PublishedMap(arity {}, {} coordinates, {} ops)".format(
            self.arity, len(self.counts), self.program.size,
        )


def eval_published(pf, points, key: BlindingKey = None):
    """Evaluates a :class:`PublishedFunction` or :class:`PublishedMap`.

    :param key: If given, a map's output is checked to lie on W.
    """
    value = pf.evaluate(points)
    if key is not None and isinstance(pf, PublishedMap):
        if not is_on_W(key, value):
            raise ContractViolation("Published map left the blinding space.")
    return value


class _Context:
    """The ring a publication is traced in, with its rho-slots, ideal,
    random linear forms and noise.
    """
    def __init__(self, keys: Sequence[BlindingKey], form: str,
                 twisted: bool, rng: random.Random,
                 noise_terms: int = DEFAULT_NOISE_TERMS):
        if form not in FORMS:
            raise ParameterError("Unknown publication form: {}".format(form))
        if twisted and form != "terms":
            raise ParameterError("Twisted publication uses term form.")
        self.keys = list(keys)
        self.arity = len(self.keys)
        self.params = params = self.keys[0].params
        self.block = 3 * self.keys[0].n
        self.form = form
        self.twisted = twisted
        self.rng = rng
        self.noise_terms = noise_terms
        self.width = self.block * (params.d if twisted else 1)
        self.nvars = self.width * self.arity
        self.builder = None
        if form == "program":
            self.builder = ProgramBuilder(params, self.nvars)
            self.variables = self.builder.inputs
        elif twisted:
            self.variables = DescentPoly.variables(params, self.nvars)
        else:
            self.variables = MultiPoly.variables(params, self.nvars)
        generators = []
        for p, key in enumerate(self.keys):
            ideal = key.ideal.descended(params) if twisted else key.ideal
            generators.extend(
                g.embed(p * self.width, self.nvars) for g in ideal.generators
            )
        self.ideal = AmbivalenceIdeal(generators)
        self._slots = {}
        self.samples = [self._sample_input() for _ in range(TEST_POINTS)]

    def _block(self, p):
        return self.variables[p * self.width:(p + 1) * self.width]

    def slot(self, read):
        """rho_l(w_p) in the publication ring.
        """
        if read in self._slots:
            return self._slots[read]
        p, l = read
        if not 0 <= p < self.arity:
            raise ParameterError("Read of argument {} out of range".format(p))
        key = self.keys[p]
        f1, f2, _ = key.F[l]
        if self.twisted:
            a, b = key.twists[l]
            pair = tuple(
                descent_reduce(
                    frobenius_coeffs(f, t), [t] * self.block, self.params,
                ).embed(p * self.width, self.nvars)
                for f, t in ((f1, a), (f2, b))
            )
        else:
            block = self._block(p)
            pair = (f1.evaluate(block), f2.evaluate(block))
        self._slots[read] = pair
        return pair

    def points(self, reads):
        return [self.slot(r) for r in reads]

    def _sample_input(self):
        flat = []
        for key in self.keys:
            w = sample_W(key, self.rng)
            flat.extend(descend_point(w, self.params) if self.twisted else w)
        return flat

    def linear_form(self):
        """A random affine form with nonzero linear part that does not
        vanish on the test sample.
        """
        params = self.params
        for _ in range(get_retry_budget()):
            coeffs = [params.random_element(self.rng)
                      for _ in range(self.nvars)]
            if not any(coeffs):
                continue
            const = params.random_element(self.rng)
            form = MultiPoly.linear(params, self.nvars, coeffs, const)
            if all(form.evaluate(s) for s in self.samples):
                return self._in_ring(coeffs, const)
        raise LinearFormDegenerate(
            "Could not find a linear form that avoids the test points."
        )

    def _in_ring(self, coeffs, const):
        if self.builder is not None:
            total = self.builder.const(const)
            for c, x in zip(coeffs, self.variables):
                if c:
                    total = total + x * c
            return total
        cls = DescentPoly if self.twisted else MultiPoly
        return cls.linear(self.params, self.nvars, coeffs, const)

    def noisy(self, value, dmax: int):
        """Adds a random element of I_dmax.
        """
        dmax = max(dmax, 2)
        if self.builder is not None:
            noise = sample_ideal_element(
                self.ideal, dmax, self.rng, self.noise_terms,
            )
            return value + noise.evaluate(self.variables)
        if not isinstance(value, MultiPoly):
            cls = DescentPoly if self.twisted else MultiPoly
            value = cls.constant(self.params, self.nvars, value)
        return coset_sample(
            value, self.ideal, dmax, self.rng, self.noise_terms,
        )

    def check_hidden(self, den):
        if isinstance(den, MultiPoly):
            if not any(den.evaluate(s) for s in self.samples):
                raise ContractViolation(
                    "Hidden denominator vanishes on the blinding space."
                )


def _normalize_keys(key, arity: int) -> List[BlindingKey]:
    if isinstance(key, BlindingKey):
        return [key] * arity
    keys = list(key)
    if len(keys) != arity:
        raise ParameterError("Need one key per argument.")
    return keys


def _arity(hidden) -> int:
    return 1 + max(p for piece in hidden for p, _ in piece.reads)


def _sum_telescope(ctx: _Context, values, forms) -> list:
    """(g'_i, h'_i, degree bound) before noise; ``forms`` holds the 2m
    linear forms l_{i,1}, l_{i,2}, wrapping around after the last piece.
    """
    m = len(values)
    out = []
    for i, (g, h) in enumerate(values):
        ctx.check_hidden(h)
        l1, l2 = forms[2 * i], forms[2 * i + 1]
        j = (2 * i + 2) % (2 * m)
        n1, n2 = forms[j], forms[j + 1]
        g1 = g * l2 * n2 + l1 * h * n2 - n1 * h * l2
        h1 = h * l2 * n2
        out.append((g1, h1, max(_degree(g), _degree(h)) + 2))
    return out


def _product_telescope(ctx: _Context, values, forms) -> list:
    m = len(values)
    out = []
    for i, (g, h) in enumerate(values):
        ctx.check_hidden(h)
        g1 = g * forms[i]
        h1 = h * forms[(i + 1) % m]
        out.append((g1, h1, max(_degree(g), _degree(h)) + 1))
    return out


def _add_noise(ctx: _Context, pieces) -> list:
    return [
        (ctx.noisy(g, dmax), ctx.noisy(h, dmax)) for g, h, dmax in pieces
    ]


def _sum_pieces(ctx: _Context, values, forms=None) -> list:
    if forms is None:
        forms = [ctx.linear_form() for _ in range(2 * len(values))]
    return _add_noise(ctx, _sum_telescope(ctx, values, forms))


def _product_pieces(ctx: _Context, values, forms=None) -> list:
    if forms is None:
        forms = [ctx.linear_form() for _ in range(len(values))]
    return _add_noise(ctx, _product_telescope(ctx, values, forms))


def _as_poly(ctx: _Context, x):
    if isinstance(x, MultiPoly):
        return x
    cls = DescentPoly if ctx.twisted else MultiPoly
    return cls.constant(ctx.params, ctx.nvars, x)


def _publish(mode, hidden: Sequence[LocalFunction], key, rng, form,
             twisted, spaces, noise_terms) -> PublishedFunction:
    hidden = list(hidden)
    if not hidden:
        raise ParameterError("Nothing to publish.")
    arity = _arity(hidden)
    ctx = _Context(
        _normalize_keys(key, arity), form, twisted, rng, noise_terms,
    )
    values = [piece(ctx.points(piece.reads)) for piece in hidden]
    combine = _sum_pieces if mode == "sum" else _product_pieces
    pieces = combine(ctx, values)
    logger.debug("Published %s of %d pieces (%s)", mode, len(pieces), form)
    if ctx.builder is not None:
        program = ctx.builder.build([x for pair in pieces for x in pair])
        return PublishedFunction(
            mode, arity, ctx.nvars, program=program, spaces=spaces,
        )
    pieces = [(_as_poly(ctx, g), _as_poly(ctx, h)) for g, h in pieces]
    return PublishedFunction(
        mode, arity, ctx.nvars, pieces=pieces, twisted=twisted,
        spaces=spaces,
    )


def publish_sum(hidden: Sequence[LocalFunction], key, rng: random.Random,
                form: str = "terms", twisted: bool = False, spaces=None,
                noise_terms: int = DEFAULT_NOISE_TERMS) -> PublishedFunction:
    """Publishes the sum of the hidden local functions.

    :param key: A :class:`BlindingKey`, or one key per argument.
    :raises LinearFormDegenerate: If no usable linear form is found.
    """
    return _publish(
        "sum", hidden, key, rng, form, twisted, spaces, noise_terms,
    )


def publish_product(hidden: Sequence[LocalFunction], key,
                    rng: random.Random, form: str = "terms",
                    twisted: bool = False, spaces=None,
                    noise_terms: int = DEFAULT_NOISE_TERMS
                    ) -> PublishedFunction:
    """Publishes the product of the hidden local functions.
    """
    return _publish(
        "product", hidden, key, rng, form, twisted, spaces, noise_terms,
    )


def publish_twisted(hidden: Sequence[LocalFunction], key: BlindingKey,
                    rng: random.Random, mode: str = "sum",
                    noise_terms: int = DEFAULT_NOISE_TERMS
                    ) -> PublishedFunction:
    """Publishes against a twisted key. The pieces are descent polynomials
    in 3n*d variables per argument, evaluated at descent coordinates.
    """
    return _publish(
        mode, hidden, key, rng, "terms", True, None, noise_terms,
    )


def publish_local_map(maps: Sequence[LocalMap], key, rng: random.Random,
                      out_key: BlindingKey = None, spaces=None,
                      out_space=None,
                      noise_terms: int = DEFAULT_NOISE_TERMS) -> PublishedMap:
    """Publishes the blinded version of a bounded-locality map.

    Output locality j is mu-tilde_j of ``maps[j]``; output coordinate r is
    then sum_{j,k} delta^-1[r][3j+k] u_{jk}, a sum of 3n semi-local
    functions published with the sum procedure.

    :param key: The key (or keys) of the input points.
    :param out_key: The key of the output space; defaults to the input key.
    """
    maps = list(maps)
    arity = _arity(maps)
    keys = _normalize_keys(key, arity)
    out_key = out_key or keys[0]
    if out_key.twisted or any(k.twisted for k in keys):
        raise ContractViolation("Maps are published for basic keys only.")
    if len(maps) != out_key.n:
        raise ParameterError("Need one local map per locality.")
    ctx = _Context(keys, "program", False, rng, noise_terms)
    locals_ = []
    for j, local_map in enumerate(maps):
        x, y = local_map(ctx.points(local_map.reads))
        locals_.append(mu_fractions(out_key.mu_tilde[j], x, y))
    outputs = []
    counts = []
    for row in out_key.delta_inv:
        values = []
        for j, (nums, den) in enumerate(locals_):
            for k in range(3):
                c = row[3 * j + k]
                if c:
                    values.append((nums[k] * c, den))
        pieces = _sum_pieces(ctx, values)
        counts.append(len(pieces))
        outputs.extend(x for pair in pieces for x in pair)
    program = ctx.builder.build(outputs)
    logger.debug("Published map: %d ops", program.size)
    return PublishedMap(
        arity, ctx.nvars, program, counts, spaces=spaces, out_space=out_space,
    )


class UnknownReport:
    """Counts of the unknowns and conditions a publication induces.
    """
    def __init__(self, published, linear_form_unknowns, local_unknowns,
                 blinding_unknowns, conditions):
        self.published = published
        self.linear_form_unknowns = linear_form_unknowns
        self.local_unknowns = local_unknowns
        self.blinding_unknowns = blinding_unknowns
        self.conditions = conditions

    @property
    def unknowns(self) -> int:
        return (
            self.linear_form_unknowns + self.local_unknowns +
            self.blinding_unknowns
        )

    def dump(self) -> str:
        return (
            "published coefficients: {}\n"
            "linear-form unknowns: {}\n"
            "local-function unknowns: {}\n"
            "blinding unknowns: {}\n"
            "conditions: {}\n"
        ).format(
            self.published, self.linear_form_unknowns, self.local_unknowns,
            self.blinding_unknowns, self.conditions,
        )


def _monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree, degree) if degree >= 0 else 0


def count_unknowns(pf: PublishedFunction, n: int) -> UnknownReport:
    """Counts, for documentation, what an attacker solving for the hidden
    decomposition of ``pf`` faces.

    Hidden local functions are assumed to have half the published degree
    (F_{ij} are quadratic); every published coefficient of a piece induces
    one condition.
    """
    nvars = pf.nvars
    if pf.pieces is not None:
        published = sum(len(g.terms) + len(h.terms) for g, h in pf.pieces)
    else:
        published = len(pf.program.consts) + pf.program.size
    forms = 2 * pf.m if pf.mode == "sum" else pf.m
    linear_form_unknowns = forms * (nvars + 1)
    degree = pf.degree()
    local_degree = max(degree - (2 if pf.mode == "sum" else 1), 0) // 2
    local_vars = 2 * pf.arity
    local_unknowns = 2 * pf.m * _monomials(local_vars, local_degree)
    blinding_unknowns = 2 * n * _monomials(3 * n, 2)
    conditions = 2 * pf.m * _monomials(nvars, degree)
    return UnknownReport(
        published, linear_form_unknowns, local_unknowns, blinding_unknowns,
        conditions,
    )
