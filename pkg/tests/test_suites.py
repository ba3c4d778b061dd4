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

from trimap.errors import ContractViolation
from trimap.suites import (
    SUITES, RetryCounter, SuiteResult, report, run_suite, verify,
)
from trimap.trimap import TrimapInstance, VerifyOpts
from trimap.writer import write_public, write_secret
import copy
import logging
import pytest


@pytest.mark.parametrize("name", SUITES)
def test_quick_suites_pass(name, instance):
    result = run_suite(name, instance, seed=3)
    assert result.skipped is None
    assert result.failures == []
    assert result.samples > 0
    assert result.line().startswith(name + ": PASS samples=")


def test_mutated_alpha_fails_soundness(instance):
    public = copy.copy(instance.public)
    public.alpha_hat = public.scalar_hat(public.alpha_hat, 2)
    result = run_suite("soundness", TrimapInstance(public, instance.secret))
    assert not result.passed
    assert any("alpha-hat" in message for message in result.failures)


def test_public_only(public):
    bare = TrimapInstance(public)
    skipped = run_suite("pairing", bare)
    assert skipped.line() == "pairing: SKIP (needs the secret file)"
    assert run_suite("kernel", bare).passed


def test_unknown_suite(instance):
    with pytest.raises(ContractViolation):
        run_suite("nope", instance)


def test_report():
    ok = SuiteResult("span")
    ok.check(True, "unused")
    bad = SuiteResult("dlp")
    for i in range(7):
        bad.check(False, "miss {}".format(i))
    text = report([ok, bad])
    lines = text.splitlines()
    assert lines[0] == "span: PASS samples=1 retries=0"
    assert lines[1] == "dlp: FAIL samples=7 retries=0"
    assert lines[2:] == ["  miss {}".format(i) for i in range(5)]


def test_retry_counter():
    counter = RetryCounter()
    logger = logging.getLogger("trimap")
    logger.addHandler(counter)
    try:
        logging.getLogger("trimap.retry").warning("again")
        logging.getLogger("trimap.pairing").warning("unrelated")
    finally:
        logger.removeHandler(counter)
    assert counter.count == 1


def test_verify_files(tmp_path, instance):
    prefix = str(tmp_path / "inst")
    (tmp_path / "inst.pub").write_text(write_public(instance.public))
    opts = VerifyOpts()
    opts.prefix = prefix
    opts.checks = ["pairing"]
    with pytest.raises(ContractViolation):
        verify(opts)
    (tmp_path / "inst.sec").write_text(write_secret(instance.secret))
    opts.checks = ["span", "kernel"]
    opts.outpath = str(tmp_path / "report.txt")
    results = verify(opts)
    assert all(r.passed for r in results)
    text = (tmp_path / "report.txt").read_text()
    assert text.startswith("span: PASS")
