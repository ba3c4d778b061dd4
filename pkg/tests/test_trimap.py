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

from trimap.blinding import SPACE_E, SPACE_E_PRIME, BlindedPoint
from trimap.curve import add, scalar_mul
from trimap.errors import ContractViolation, ParameterError
from trimap.ncpoly import NCPoly
from trimap.trimap import (
    GeneratorMatrix, TrimapInstance, add_hat, apply_phi, check_dlp_answer,
    dlp_challenge, encode, encoding_order, gen_generators, setup,
    solve_dlp_brute_force, solve_dlp_pairing, solve_dlp_trapdoor,
    spanning_rank, tri_eval,
)
from trimap.writer import write_public
import itertools
import pytest
import random


@pytest.fixture(scope="module")
def encodings(instance):
    rng = random.Random(40)
    return [encode(instance, a, rng) for a in range(instance.public.ell)]


def test_encode_is_scalar(instance, encodings):
    secret = instance.secret
    for a, f in enumerate(encodings):
        assert f.has_encoding_shape(secret.n)
        assert solve_dlp_trapdoor(instance, f) == a
        field = secret.lam(f)[0][0].field
        assert secret.lam(f) == [
            [field.element(a * (r == s)) for s in range(secret.n)]
            for r in range(secret.n)
        ]


def test_encoding_acts_as_scalar(instance, encodings):
    secret = instance.secret
    E = secret.curve
    f = encodings[3]
    assert secret.act(f, secret.beta) == [
        scalar_mul(E, 3, P) for P in secret.beta
    ]


def test_tri_eval_basic(instance, encodings):
    public = instance.public
    for a in (0, 1, 3):
        value = tri_eval(instance, public.alpha_hat, public.beta_hat,
                         encodings[a])
        assert value == public.zeta ** a


def test_trilinear(instance, encodings):
    public = instance.public
    a, b, c = 2, 3, 4
    x = public.scalar_hat(public.alpha_hat, a)
    y = public.scalar_hat(public.beta_hat, b)
    value = public.tri_eval(x, y, encodings[c])
    assert value == public.zeta ** (a * b * c % public.ell)
    assert public.discrete_log(value) == a * b * c % public.ell


@pytest.mark.slow
def test_trilinear_exhaustive(instance, encodings):
    public = instance.public
    ell = public.ell
    xs = [public.scalar_hat(public.alpha_hat, a) for a in range(ell)]
    ys = [public.scalar_hat(public.beta_hat, b) for b in range(ell)]
    for a, b, c in itertools.product(range(ell), repeat=3):
        value = public.tri_eval(xs[a], ys[b], encodings[c])
        assert public.discrete_log(value) == a * b * c % ell


def test_reencoding_keeps_value(instance, encodings):
    public = instance.public
    ell = public.ell
    rng = random.Random(44)
    fresh = 0
    for _ in range(10):
        a, b, c = (rng.randrange(ell) for _ in range(3))
        x = public.scalar_hat(public.alpha_hat, a)
        y = public.scalar_hat(public.beta_hat, b)
        f = encode(instance, c, rng)
        fresh += f != encodings[c]
        value = public.tri_eval(x, y, f)
        assert value == public.tri_eval(x, y, encodings[c])
        assert public.discrete_log(value) == a * b * c % ell
    assert fresh


@pytest.mark.slow
def test_self_pairing_moves_scalars(public):
    ell = public.ell
    xs = [public.scalar_hat(public.alpha_hat, k) for k in range(ell)]
    for i in range(public.N):
        phis = [public.phi_hat(i, x) for x in xs]
        for a, b in itertools.product(range(ell), repeat=2):
            assert public.pair(xs[a], phis[b]) == public.pair(
                public.alpha_hat, phis[a * b % ell],
            )


def test_zeta_nontrivial(public):
    assert public.zeta != public.params.one
    assert public.zeta ** public.ell == public.params.one
    assert public.discrete_log(public.zeta ** 3) == 3
    assert public.discrete_log(public.params.zero) is None


def test_kernel(instance):
    public = instance.public
    assert len(public.kernel) == 4
    assert len(set(public.kernel)) == len(public.kernel)
    for f in public.kernel:
        assert solve_dlp_trapdoor(instance, f) == 0
        value = public.tri_eval(public.alpha_hat, public.beta_hat, f)
        assert value == public.params.one


def test_dlp_solvers(instance):
    rng = random.Random(41)
    for i in range(20):
        f, a = dlp_challenge(instance, rng)
        assert solve_dlp_trapdoor(instance, f) == a
        assert solve_dlp_pairing(instance.public, f) == a
        if i < 5:
            assert solve_dlp_brute_force(instance.public, f) == a
        assert check_dlp_answer(instance.public, f, a)
        assert not check_dlp_answer(instance.public, f, a + 1)


def test_group_law_commutes(instance):
    public, secret = instance.public, instance.secret
    E = secret.curve
    x = public.beta_hat
    y = apply_phi(instance, 0, x)
    assert secret.unblind(y) == secret.generators[0].apply(E, secret.beta)
    doubled = public.double_hat(x)
    total = add_hat(instance, x, doubled)
    assert secret.unblind(total) == [
        add(E, P, Q)
        for P, Q in zip(secret.unblind(x), secret.unblind(doubled))
    ]
    assert secret.unblind(total) == [scalar_mul(E, 3, P) for P in secret.beta]
    assert doubled == public.add_hat(x, x)
    assert public.scalar_hat(x, public.ell) == public.identity(SPACE_E)
    assert public.scalar_hat(x, 2) == doubled
    assert public.add_hat(x, public.identity()) == x


def test_contract_violations(instance, encodings):
    public = instance.public
    stray = BlindedPoint(public.beta_hat.coords, SPACE_E_PRIME)
    with pytest.raises(ContractViolation):
        public.add_hat(public.beta_hat, stray)
    with pytest.raises(ContractViolation):
        public.phi_hat(0, stray)
    with pytest.raises(ContractViolation):
        public.identity(SPACE_E_PRIME)
    with pytest.raises(ContractViolation):
        public.lines_for(SPACE_E_PRIME, SPACE_E)
    with pytest.raises(ContractViolation):
        public.tri_eval(public.alpha_hat, public.beta_hat,
                        NCPoly.word(public.ell, [1]))
    with pytest.raises(ContractViolation):
        public.tri_eval(public.alpha_hat, public.beta_hat,
                        NCPoly.word(7, [1, 2]))
    with pytest.raises(ParameterError):
        public.phi_hat(public.N, public.beta_hat)


def test_public_only_instance(public):
    bare = TrimapInstance(public)
    with pytest.raises(ContractViolation):
        bare.require_secret()
    with pytest.raises(ContractViolation):
        encode(bare, 1, random.Random(0))


def test_encoding_order():
    f = NCPoly(5, {(): 1, (2,): 1, (1, 2): 3, (1,): 2, (2, 1): 4})
    order = [word for word, _ in encoding_order(f)]
    assert order == [(1, 2), (2, 1), (1,), (2,), ()]


def test_generators(secret):
    assert secret.N == 5
    assert spanning_rank(secret.generators, secret.ell) == 4
    gens = gen_generators(2, 5, 7, random.Random(42))
    assert spanning_rank(gens, 7) == 4
    with pytest.raises(ParameterError):
        gen_generators(2, 2, 5, random.Random(0))


def test_generator_matrix_rows():
    with pytest.raises(ParameterError):
        GeneratorMatrix(5, [((0, 2), (1, 2)), ((0, 1), (1, 2))])
    with pytest.raises(ParameterError):
        GeneratorMatrix(5, [((0, 1), (1, 1)), ((0, 1), (1, 1))])
    with pytest.raises(ParameterError):
        GeneratorMatrix(5, [((0, 1), (0, 2)), ((0, 1), (1, 2))])
    gen = GeneratorMatrix(5, [((0, 1), (1, 2)), ((1, 1), (0, 1))])
    assert gen.n == 2


def test_setup_rejects():
    with pytest.raises(ParameterError):
        setup(n=2, ell=4, seed=0)
    with pytest.raises(ParameterError):
        setup(n=0, ell=5, seed=0)


@pytest.mark.slow
def test_setup_deterministic(public):
    again = setup(n=2, ell=5, seed=42).public
    assert write_public(again) == write_public(public)


@pytest.mark.slow
def test_ddh_instance():
    instance = setup(n=1, ell=5, ddh=True, seed=7)
    public = instance.public
    assert public.alpha_hat.space == SPACE_E_PRIME
    assert public.beta_hat.space == SPACE_E
    rng = random.Random(43)
    f = encode(instance, 2, rng)
    x = public.scalar_hat(public.alpha_hat, 3)
    value = public.tri_eval(x, public.beta_hat, f)
    assert public.discrete_log(value) == 1
