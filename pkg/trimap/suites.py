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

"""Verification suites run against an instance.

Each suite draws its samples from a seeded generator and reports the number
of samples, the number of retries logged while it ran and any failures.
"""

from .blinding import (
    SPACE_E, ambivalent_representatives, d_alpha_variant, is_on_W, lift,
    rho, rho_from, sample_W,
)
from .curve import O, add, double, scalar_mul
from .errors import ContractViolation, DenominatorZero, TrimapError
from .field import as_rng
from .local import (
    add_map, chord_function, double_map, generator_map, tangent_function,
    vertical_function,
)
from .pairing import blinded_pair_secret, weil
from .trimap import (
    TrimapInstance, VerifyOpts, _random_torsion, _write_output,
    dlp_challenge, encode, load_public, load_secret, public_path,
    secret_path, solve_dlp_pairing, solve_dlp_trapdoor, spanning_rank,
)

from typing import List
import logging
import os.path

logger = logging.getLogger(__name__)

SUITES = (
    "blinding", "ambivalence", "pairing", "blinded", "commutation",
    "soundness", "trilinearity", "kernel", "dlp", "span",
)
# Suites that run from the public file alone.
PUBLIC_SUITES = ("kernel",)


class SuiteResult:
    def __init__(self, name: str):
        self.name = name
        self.samples = 0
        self.retries = 0
        self.failures = []
        self.skipped = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str):
        self.samples += 1
        if not ok:
            self.failures.append(message)

    def line(self) -> str:
        if self.skipped is not None:
            return "{}: SKIP ({})".format(self.name, self.skipped)
        return "{}: {} samples={} retries={}".format(
            self.name, "PASS" if self.passed else "FAIL", self.samples,
            self.retries,
        )


class RetryCounter(logging.Handler):
    """Counts the retry warnings logged by :mod:`trimap.retry`.
    """
    def __init__(self):
        super().__init__(logging.WARNING)
        self.count = 0

    def emit(self, record):
        if record.name == "trimap.retry":
            self.count += 1


def _count(full: bool, quick: int, exhaustive: int) -> int:
    return exhaustive if full else quick


def _torsion_vector(secret, rng) -> list:
    return [
        _random_torsion(secret.curve, secret.basis, rng)
        for _ in range(secret.n)
    ]


def _paired_vectors(secret, rng):
    # Localities pairwise independent, so no line function meets a zero.
    E = secret.curve
    while True:
        x = _torsion_vector(secret, rng)
        y = _torsion_vector(secret, rng)
        if all(weil(E, P, Q) != E.field.one for P, Q in zip(x, y)):
            return x, y


def suite_blinding(instance, rng, full, result):
    secret = instance.secret
    params = secret.params
    for space, key in secret.keys.items():
        twisted = key.with_twists([
            (rng.randrange(params.d), rng.randrange(params.d))
            for _ in range(key.n)
        ])
        for k in (key, twisted):
            for _ in range(_count(full, 20, 1000) // 2):
                v = [
                    (params.random_element(rng), params.random_element(rng))
                    for _ in range(k.n)
                ]
                w = lift(k, v)
                result.check(
                    is_on_W(k, w) and rho(k, w) == v,
                    "rho(lift(v)) != v on {}".format(space),
                )


def suite_ambivalence(instance, rng, full, result):
    secret = instance.secret
    params = secret.params
    count = _count(full, 3, 20)
    points = _count(full, 10, 100)
    for key in secret.keys.values():
        # Representatives are defined for the untwisted map.
        key = key.with_twists(None)
        reps = ambivalent_representatives(key, count, rng)
        variants = [
            d_alpha_variant(key, rng.randrange(key.n),
                            params.random_nonzero(rng))
            for _ in range(count)
        ]
        for _ in range(points):
            w = sample_W(key, rng)
            expected = rho(key, w)
            for rep in reps:
                result.check(
                    rho_from(rep, key, w) == expected,
                    "Ambivalent representative disagrees with rho.",
                )
            for variant in variants:
                result.check(
                    rho(variant, w) == expected,
                    "D_alpha variant disagrees with rho.",
                )


def suite_pairing(instance, rng, full, result):
    secret = instance.secret
    E = secret.curve
    P1, P2 = secret.basis
    one = E.field.one
    base = weil(E, P1, P2)
    result.check(base != one, "Weil pairing degenerate on the basis.")
    result.check(weil(E, P1, P1) == one, "Weil pairing not alternating.")
    if full:
        pairs = [(i, j) for i in range(E.ell) for j in range(E.ell)]
    else:
        pairs = [
            (rng.randrange(E.ell), rng.randrange(E.ell)) for _ in range(6)
        ]
    for i, j in pairs:
        value = weil(E, scalar_mul(E, i, P1), scalar_mul(E, j, P2))
        result.check(
            value == base ** (i * j % E.ell),
            "e([{}]P1, [{}]P2) != e(P1, P2)^{}".format(i, j, i * j),
        )


def suite_blinded(instance, rng, full, result):
    public, secret = instance.public, instance.secret
    for _ in range(_count(full, 5, 50)):
        x, y = _paired_vectors(secret, rng)
        x_hat = secret.blind(x, public.alpha_space)
        y_hat = secret.blind(y, SPACE_E)
        result.check(
            public.pair(x_hat, y_hat) ==
            blinded_pair_secret(secret, x_hat, y_hat),
            "Blinded pairing disagrees with the unblinded product.",
        )


def suite_commutation(instance, rng, full, result):
    public, secret = instance.public, instance.secret
    E = secret.curve
    for _ in range(_count(full, 5, 50)):
        x = _torsion_vector(secret, rng)
        y = _torsion_vector(secret, rng)
        for space in public.spaces:
            x_hat = secret.blind(x, space)
            y_hat = secret.blind(y, space)
            result.check(
                secret.unblind(public.add_hat(x_hat, y_hat)) ==
                [add(E, P, Q) for P, Q in zip(x, y)],
                "rho o m-hat != m o (rho, rho) on {}".format(space),
            )
            result.check(
                secret.unblind(public.double_hat(x_hat)) ==
                [double(E, P) for P in x],
                "Doubling does not commute with rho on {}".format(space),
            )
        i = rng.randrange(secret.N)
        z_hat = secret.blind(x, SPACE_E)
        result.check(
            secret.unblind(public.phi_hat(i, z_hat)) ==
            secret.generators[i].apply(E, x),
            "rho o phi-hat_{0} != phi_{0} o rho".format(i + 1),
        )


def _hidden_map(maps, keys, out_key, ws):
    values = [rho(k, w) for k, w in zip(keys, ws)]
    pairs = []
    for local_map in maps:
        points = [values[p][l] for p, l in local_map.reads]
        (nu, du), (nw, dw) = local_map(points)
        if not du or not dw:
            return None
        pairs.append((nu / du, nw / dw))
    return lift(out_key, pairs)


def _hidden_product(pieces, keys, ws):
    values = [rho(k, w) for k, w in zip(keys, ws)]
    total = None
    for piece in pieces:
        value = piece.value([values[p][l] for p, l in piece.reads])
        if value is None:
            return None
        total = value if total is None else total * value
    return total


def _published_targets(instance):
    # (name, published, hidden pieces, keys, kind)
    public, secret = instance.public, instance.secret
    E = secret.curve
    for space in public.spaces:
        Ts = secret.transforms[space]
        key = secret.keys[space]
        yield ("add on " + space, public.add_maps[space],
               [add_map(T, j) for j, T in enumerate(Ts)], [key, key], "map")
        yield ("double on " + space, public.double_maps[space],
               [double_map(T, E.a, j) for j, T in enumerate(Ts)], [key],
               "map")
    Ts = secret.transforms[SPACE_E]
    for i, (gen, pm) in enumerate(zip(secret.generators, public.phi_maps)):
        yield ("phi{}".format(i + 1), pm,
               [generator_map(Ts, E.a, j, row)
                for j, row in enumerate(gen.rows)],
               [secret.keys[SPACE_E]], "map")
    for (sp, sq), fns in public.lines.items():
        Tp, Tq = secret.transforms[sp], secret.transforms[sq]
        kp, kq = secret.keys[sp], secret.keys[sq]
        n = secret.n
        yield ("h {}->{}".format(sp, sq), fns.h,
               [tangent_function(Tp[j], Tq[j], E.a, j) for j in range(n)],
               [kp, kq], "product")
        yield ("g {}->{}".format(sp, sq), fns.g,
               [chord_function(Tp[j], Tq[j], j) for j in range(n)],
               [kp, kp, kq], "product")
        yield ("v {}->{}".format(sp, sq), fns.v,
               [vertical_function(Tp[j], Tq[j], j) for j in range(n)],
               [kp, kq], "product")


def suite_soundness(instance, rng, full, result):
    public, secret = instance.public, instance.secret
    for space in public.spaces:
        result.check(
            public.identity(space) == secret.blind([O] * secret.n, space),
            "Published identity of {} is wrong.".format(space),
        )
    result.check(
        public.alpha_hat == secret.blind(secret.alpha, public.alpha_space),
        "Published alpha-hat is not the blinding of alpha.",
    )
    result.check(
        public.beta_hat == secret.blind(secret.beta, SPACE_E),
        "Published beta-hat is not the blinding of beta.",
    )
    result.check(
        public.zeta ==
        blinded_pair_secret(secret, public.alpha_hat, public.beta_hat),
        "Published zeta is not e(alpha, beta).",
    )
    points = _count(full, 10, 100)
    for name, published, hidden, keys, kind in _published_targets(instance):
        for _ in range(points):
            ws = [sample_W(k, rng) for k in keys]
            if kind == "map":
                expected = _hidden_map(hidden, keys, keys[0], ws)
            else:
                expected = _hidden_product(hidden, keys, ws)
            if expected is None:
                continue
            try:
                value = published.evaluate(ws)
            except DenominatorZero:
                continue
            result.check(
                value == expected,
                "Published {} disagrees with its hidden target.".format(name),
            )


def suite_trilinearity(instance, rng, full, result):
    public = instance.public
    ell = public.ell
    if full:
        triples = [
            (a, b, c) for a in range(ell) for b in range(ell)
            for c in range(ell)
        ]
        reencode = 10
    else:
        triples = [
            tuple(rng.randrange(ell) for _ in range(3)) for _ in range(8)
        ]
        reencode = 2
    xs = {}
    ys = {}
    encodings = {}
    for a, b, c in triples:
        if a not in xs:
            xs[a] = public.scalar_hat(public.alpha_hat, a)
        if b not in ys:
            ys[b] = public.scalar_hat(public.beta_hat, b)
        if c not in encodings:
            encodings[c] = encode(instance, c, rng)
        value = public.tri_eval(xs[a], ys[b], encodings[c])
        result.check(
            value == public.zeta ** (a * b * c % ell),
            "tri_eval({}, {}, {}) != zeta^{}".format(a, b, c, a * b * c),
        )
    for a, b, c in triples[:reencode]:
        first = public.tri_eval(xs[a], ys[b], encodings[c])
        again = public.tri_eval(xs[a], ys[b], encode(instance, c, rng))
        result.check(
            first == again,
            "Two encodings of {} evaluate differently.".format(c),
        )


def suite_kernel(instance, rng, full, result):
    public, secret = instance.public, instance.secret
    one = public.params.one
    for f in public.kernel:
        result.check(
            public.tri_eval(public.alpha_hat, public.beta_hat, f) == one,
            "Kernel sample acts nontrivially: {!r}".format(f),
        )
        result.check(
            public.is_identity(
                public.evaluate_encoding(f, public.beta_hat),
            ),
            "Kernel sample does not annihilate beta-hat.",
        )
        if secret is not None:
            result.check(
                not any(c for row in secret.lam(f) for c in row),
                "lambda of a kernel sample is not zero.",
            )


def suite_dlp(instance, rng, full, result):
    for _ in range(_count(full, 5, 20)):
        f, a = dlp_challenge(instance, rng)
        result.check(
            solve_dlp_trapdoor(instance, f) == a,
            "Trapdoor solve failed for a = {}".format(a),
        )
        result.check(
            solve_dlp_pairing(instance, f) == a,
            "Pairing-assisted solve failed for a = {}".format(a),
        )


def suite_span(instance, rng, full, result):
    secret = instance.secret
    n = secret.n
    result.check(
        spanning_rank(secret.generators, secret.ell) == n * n,
        "Generators do not span the matrix algebra.",
    )


SUITE_FUNCTIONS = {
    "blinding": suite_blinding,
    "ambivalence": suite_ambivalence,
    "pairing": suite_pairing,
    "blinded": suite_blinded,
    "commutation": suite_commutation,
    "soundness": suite_soundness,
    "trilinearity": suite_trilinearity,
    "kernel": suite_kernel,
    "dlp": suite_dlp,
    "span": suite_span,
}


def run_suite(name: str, instance: TrimapInstance, seed=0,
              full: bool = False) -> SuiteResult:
    """Runs one suite. Errors raised by the library count as failures.
    """
    if name not in SUITE_FUNCTIONS:
        raise ContractViolation("Unknown suite: {}".format(name))
    result = SuiteResult(name)
    if instance.secret is None and name not in PUBLIC_SUITES:
        result.skipped = "needs the secret file"
        return result
    counter = RetryCounter()
    package_logger = logging.getLogger("trimap")
    package_logger.addHandler(counter)
    try:
        SUITE_FUNCTIONS[name](instance, as_rng(seed), full, result)
    except TrimapError as e:
        result.failures.append(e.message)
    finally:
        package_logger.removeHandler(counter)
    result.retries = counter.count
    logger.info("%s", result.line())
    return result


def run_suites(instance: TrimapInstance, names=None, seed=0,
               full: bool = False) -> List[SuiteResult]:
    names = list(SUITES if names is None else names)
    return [run_suite(name, instance, seed, full) for name in names]


def report(results: List[SuiteResult]) -> str:
    lines = []
    for result in results:
        lines.append(result.line())
        lines.extend("  " + message for message in result.failures[:5])
    return "".join(line + "\n" for line in lines)


def verify(opts: VerifyOpts) -> List[SuiteResult]:
    """Loads the instance (the secret file is optional), runs the selected
    suites and writes the report.
    """
    public = load_public(public_path(opts.prefix))
    secret = None
    if os.path.exists(secret_path(opts.prefix)):
        secret = load_secret(secret_path(opts.prefix))
    elif opts.checks is not None:
        needs = [c for c in opts.checks if c not in PUBLIC_SUITES]
        if needs:
            raise ContractViolation(
                "Suites {} need the secret file {}".format(
                    ", ".join(needs), secret_path(opts.prefix),
                )
            )
    instance = TrimapInstance(public, secret)
    results = run_suites(instance, opts.checks, opts.seed, opts.full)
    _write_output(opts.outpath, report(results))
    return results
