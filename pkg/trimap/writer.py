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

"""Text serialization of instances and their parts.

Files are line-oriented UTF-8. A line is a keyword followed by
space-separated tokens; nested objects are enclosed in ``begin <kind>`` and
``end`` lines. Elements of K are written as their coordinates with respect
to the published basis, comma-separated (``3,0,5`` for d = 3).
"""

from .poly import DescentPoly
from typing import Iterable, List

PUBLIC_HEADER = "trimap-public 1"
SECRET_HEADER = "trimap-secret 1"
FUNCTION_HEADER = "trimap-function 1"
HIDDEN_HEADER = "trimap-hidden 1"


def format_element(x) -> str:
    return ",".join(map(str, x.field.descend(x)))


def format_flag(value: bool) -> str:
    return "1" if value else "0"


def format_spaces(spaces) -> str:
    return "-" if spaces is None else ",".join(spaces)


def field_lines(params) -> List[str]:
    modulus = ",".join(map(str, params.modulus))
    theta = ";".join(",".join(map(str, t.coeffs)) for t in params.theta)
    return ["field q={} d={} modulus={} theta={}".format(
        params.q, params.d, modulus, theta,
    )]


def blinded_point_line(name: str, x) -> str:
    return " ".join(
        ["point", name, x.space] + [format_element(c) for c in x.coords]
    )


def curve_point_line(name: str, index: int, P) -> str:
    if P.is_infinity:
        return "epoint {} {} O".format(name, index)
    return "epoint {} {} {} {}".format(
        name, index, format_element(P.x), format_element(P.y),
    )


def poly_lines(name: str, poly) -> List[str]:
    """Terms in graded-lex order. Variables are written 1-based.
    """
    descent = isinstance(poly, DescentPoly)
    lines = ["begin poly {} nvars={} descent={}".format(
        name, poly.nvars, format_flag(descent),
    )]
    for exps, c in poly.sorted_terms():
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append("x{}".format(i + 1))
            elif e:
                factors.append("x{}^{}".format(i + 1, e))
        lines.append(" ".join(["term", format_element(c)] + factors))
    lines.append("end")
    return lines


def program_lines(program) -> List[str]:
    lines = ["begin program inputs={}".format(program.nvars)]
    lines.extend("const {}".format(format_element(c)) for c in program.consts)
    for op, a, b in program.ops:
        if op == "neg":
            lines.append("op neg {}".format(a))
        else:
            lines.append("op {} {} {}".format(op, a, b))
    lines.append("outputs " + " ".join(map(str, program.outputs)))
    lines.append("end")
    return lines


def function_lines(name: str, pf) -> List[str]:
    header = (
        "begin function {} mode={} arity={} nvars={} twisted={} spaces={} "
        "form={}".format(
            name, pf.mode, pf.arity, pf.nvars, format_flag(pf.twisted),
            format_spaces(pf.spaces), pf.form,
        )
    )
    if pf.form == "program":
        lines = [header + " start={} m={}".format(pf.start, pf.m)]
        lines.extend(program_lines(pf.program))
    else:
        lines = [header]
        for g, h in pf.pieces:
            lines.append("begin piece")
            lines.extend(poly_lines("num", g))
            lines.extend(poly_lines("den", h))
            lines.append("end")
    lines.append("end")
    return lines


def map_lines(name: str, pm) -> List[str]:
    lines = [
        "begin map {} arity={} nvars={} spaces={} out={} counts={}".format(
            name, pm.arity, pm.nvars, format_spaces(pm.spaces),
            pm.out_space or "-", ",".join(map(str, pm.counts)),
        )
    ]
    lines.extend(program_lines(pm.program))
    lines.append("end")
    return lines


def ncpoly_lines(f) -> List[str]:
    return f.to_text().splitlines()


def write_ncpoly(f) -> str:
    """``coeff : i1.i2...ik`` lines, one per term.
    """
    return f.to_text()


def _text(lines: Iterable[str]) -> str:
    return "".join(line + "\n" for line in lines)


def write_public(public) -> str:
    """Serializes a :class:`~trimap.trimap.PublicInstance`.
    """
    lines = [PUBLIC_HEADER]
    lines.extend(field_lines(public.params))
    lines.append("instance ell={} n={} N={} ddh={}".format(
        public.ell, public.n, public.N, format_flag(public.ddh),
    ))
    for space in public.spaces:
        lines.append(blinded_point_line("identity", public.identity(space)))
    lines.append(blinded_point_line("alpha_hat", public.alpha_hat))
    lines.append(blinded_point_line("beta_hat", public.beta_hat))
    lines.append("zeta " + format_element(public.zeta))
    for space in public.spaces:
        lines.extend(map_lines("add", public.add_maps[space]))
        lines.extend(map_lines("double", public.double_maps[space]))
    for i, pm in enumerate(public.phi_maps):
        lines.extend(map_lines("phi{}".format(i + 1), pm))
    for (space_p, space_q), fns in public.lines.items():
        lines.append("begin lines {} {}".format(space_p, space_q))
        lines.extend(function_lines("h", fns.h))
        lines.extend(function_lines("g", fns.g))
        lines.extend(function_lines("v", fns.v))
        lines.append("end")
    lines.append("begin kernel")
    for f in public.kernel:
        lines.append("begin ncpoly")
        lines.extend(ncpoly_lines(f))
        lines.append("end")
    lines.append("end")
    return _text(lines)


def matrix_lines(keyword: str, matrix) -> List[str]:
    return [
        " ".join([keyword] + [format_element(c) for c in row])
        for row in matrix
    ]


def key_lines(space: str, key) -> List[str]:
    lines = ["begin key {}".format(space)]
    lines.append("twists " + " ".join(
        "{},{}".format(a, b) for a, b in key.twists
    ))
    lines.extend(matrix_lines("row", key.delta))
    for j, lam in enumerate(key.lambdas):
        lines.append("begin lambda {}".format(j))
        lines.extend(matrix_lines("A", lam.A))
        lines.extend(matrix_lines("B", lam.B))
        lines.extend(poly_lines("p", lam.p))
        lines.extend(poly_lines("q", lam.q2))
        lines.append("end")
    lines.append("end")
    return lines


def generator_line(index: int, gen) -> str:
    rows = [
        ",".join("{}:{}".format(col, c) for col, c in row) for row in gen.rows
    ]
    return " ".join(["generator", str(index)] + rows)


def write_secret(secret) -> str:
    """Serializes a :class:`~trimap.trimap.SecretInstance`.
    """
    E = secret.curve
    lines = [SECRET_HEADER]
    lines.extend(field_lines(secret.params))
    lines.append("curve a={} b={} ell={} order={}".format(
        format_element(E.a), format_element(E.b), E.ell, E.order,
    ))
    for i, P in enumerate(secret.basis):
        lines.append(curve_point_line("basis", i, P))
    for j, P in enumerate(secret.alpha):
        lines.append(curve_point_line("alpha", j, P))
    for j, P in enumerate(secret.beta):
        lines.append(curve_point_line("beta", j, P))
    for space, transforms in secret.transforms.items():
        for j, T in enumerate(transforms):
            lines.append(" ".join(
                ["transform", space, str(j), format_flag(T.includes_j)] +
                [format_element(c) for row in T.A for c in row]
            ))
    for space, key in secret.keys.items():
        lines.extend(key_lines(space, key))
    for i, gen in enumerate(secret.generators):
        lines.append(generator_line(i + 1, gen))
    return _text(lines)


def write_function_file(pf, params) -> str:
    lines = [FUNCTION_HEADER]
    lines.extend(field_lines(params))
    lines.extend(function_lines("published", pf))
    return _text(lines)


def write_hidden(mode: str, hidden) -> str:
    """Serializes a hidden function given as (reads, RationalFn) pairs.
    """
    lines = [HIDDEN_HEADER, "mode " + mode]
    for reads, fn in hidden:
        lines.append("begin piece reads={}".format(
            ",".join("{}:{}".format(p, l) for p, l in reads),
        ))
        lines.extend(poly_lines("num", fn.num))
        lines.extend(poly_lines("den", fn.den))
        lines.append("end")
    return _text(lines)


def write_eval_result(value, exponent) -> str:
    return "value {}\nexponent {}\n".format(
        format_element(value), "none" if exponent is None else exponent,
    )
