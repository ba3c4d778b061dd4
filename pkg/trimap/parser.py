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

"""Parsers for the text formats written by :mod:`trimap.writer`.
"""

from .blinding import SPACES, BlindedPoint, BlindingKey, LocalQuadIso
from .curve import CurveParams, CurveTransform, Point
from .errors import BaseParseError, TrimapError
from .field import FieldParams
from .ncpoly import NCPoly
from .poly import DescentPoly, MultiPoly, RationalFn
from .program import Program
from .publisher import MODES, PublishedFunction, PublishedMap
from . import writer

from bisect import bisect_right
from collections import namedtuple
import re


def _build_line_map_gen(text):
    yield 0
    for i, char in enumerate(text):
        if char == b"\n"[0]:
            yield i + 1


def build_line_map(text):
    return list(_build_line_map_gen(text))


def bytes_repr(bytestr):
    try:
        return repr(bytestr.decode())
    except UnicodeDecodeError:
        pass
    return repr(bytestr)


class ParseError(BaseParseError):
    msg_header = "Parser error"

    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(message)

    @classmethod
    def with_header(cls, message, line, col):
        return cls("{}:\nAt line {}, column {}:\n{}".format(
            cls.msg_header, line, col, message,
        ), line, col)


class Parser:
    """A generic bytestring parser.
    """
    def __init__(self, text):
        if not text.endswith(b"\n"):
            text += b"\n"
        self.text = text
        self.i = 0
        self.linemap = build_line_map(text)

    def line_to_pos(self, lineno):
        return self.linemap[max(lineno, 1) - 1]

    def pos_to_line(self, pos):
        return bisect_right(self.linemap, pos)

    def get_line_end(self, pos):
        try:
            return self.text.index(b"\n", pos)
        except ValueError:
            return len(self.text)

    @property
    def location(self):
        line = self.pos_to_line(self.i)
        col = self.i - self.line_to_pos(line) + 1
        return (line, col)

    @property
    def done(self):
        return self.i >= len(self.text)

    def setpos(self, pos):
        self.i = pos

    def error(self, message):
        line, col = self.location
        self.raise_exc(message, line, col)

    def raise_exc(self, message, line, col):
        raise ParseError.with_header(message, line, col)


class Token(namedtuple("Token", "text pos")):
    pass


class LineParser(Parser):
    """Reads the line-oriented formats: one keyword and its tokens per
    line. Blank lines and lines starting with ``#`` are skipped.
    """
    def __init__(self, text, params: FieldParams = None):
        super().__init__(text)
        self.params = params
        self.last = None

    def read_line(self):
        while not self.done:
            start = self.i
            end = self.get_line_end(start)
            self.setpos(end + 1)
            tokens = []
            for match in re.finditer(rb"\S+", self.text[start:end]):
                try:
                    text = match.group().decode()
                except UnicodeDecodeError:
                    self.setpos(start + match.start())
                    self.error("Invalid UTF-8: " + bytes_repr(match.group()))
                tokens.append(Token(text, start + match.start()))
            if tokens and not tokens[0].text.startswith("#"):
                self.last = tokens
                return tokens
        return None

    def peek_line(self):
        pos = self.i
        tokens = self.read_line()
        self.setpos(pos)
        return tokens

    def next_line(self, what):
        tokens = self.read_line()
        if tokens is None:
            self.error("Unexpected end of file while reading " + what)
        return tokens

    def error_at(self, token, message):
        self.setpos(token.pos)
        self.error(message)

    def expect(self, tokens, keyword, count=None):
        if tokens[0].text != keyword:
            self.error_at(tokens[0], "Expected {!r}".format(keyword))
        if count is not None and len(tokens) != count:
            self.error_at(tokens[0], "Expected {} tokens after {!r}".format(
                count - 1, keyword,
            ))

    def integer(self, token, text=None):
        try:
            return int(token.text if text is None else text)
        except ValueError:
            self.error_at(token, "Expected an integer, not {!r}".format(
                token.text if text is None else text,
            ))

    def integers(self, token, text, sep=","):
        return [self.integer(token, part) for part in text.split(sep)]

    def attrs(self, tokens):
        """Parses ``name=value`` tokens.
        """
        out = {}
        for token in tokens:
            name, eq, value = token.text.partition("=")
            if not eq:
                self.error_at(token, "Expected name=value")
            out[name] = Token(value, token.pos + len(name) + 1)
        return out

    def attr(self, attrs, name, near):
        try:
            return attrs[name]
        except KeyError:
            self.error_at(near, "Missing attribute {!r}".format(name))

    def flag(self, token):
        if token.text not in ("0", "1"):
            self.error_at(token, "Expected 0 or 1")
        return token.text == "1"

    def space(self, token):
        if token.text not in SPACES:
            self.error_at(token, "Unknown point space {!r}".format(
                token.text,
            ))
        return token.text

    def spaces(self, token):
        if token.text == "-":
            return None
        return tuple(
            self.space(Token(s, token.pos)) for s in token.text.split(",")
        )

    def element(self, token):
        if self.params is None:
            self.error_at(token, "Field parameters must come first")
        coords = self.integers(token, token.text)
        if len(coords) != self.params.d:
            self.error_at(token, "Expected {} coordinates".format(
                self.params.d,
            ))
        return self.params.recompose(coords)

    def checked(self, token, fn, *args):
        """Calls a constructor, reporting its errors at ``token``.
        """
        try:
            return fn(*args)
        except TrimapError as e:
            self.error_at(token, e.message)

    def end(self, what):
        tokens = self.next_line(what)
        self.expect(tokens, "end", 1)

    def header(self, expected):
        tokens = self.next_line("the file header")
        if " ".join(t.text for t in tokens) != expected:
            self.error_at(tokens[0], "Expected header {!r}".format(expected))

    def field(self):
        tokens = self.next_line("the field parameters")
        self.expect(tokens, "field", 5)
        attrs = self.attrs(tokens[1:])
        q = self.integer(self.attr(attrs, "q", tokens[0]))
        d = self.integer(self.attr(attrs, "d", tokens[0]))
        modulus_tok = self.attr(attrs, "modulus", tokens[0])
        modulus = self.integers(modulus_tok, modulus_tok.text)
        theta_tok = self.attr(attrs, "theta", tokens[0])
        theta = [
            self.integers(theta_tok, row)
            for row in theta_tok.text.split(";")
        ]
        self.params = self.checked(
            tokens[0], FieldParams, q, d, modulus, theta,
        )
        return self.params

    def blinded_point(self, tokens):
        self.expect(tokens, "point")
        if len(tokens) < 4:
            self.error_at(tokens[0], "Expected a name, a space and coords")
        space = self.space(tokens[2])
        coords = [self.element(t) for t in tokens[3:]]
        return tokens[1].text, BlindedPoint(coords, space)

    def curve_point(self, tokens):
        self.expect(tokens, "epoint")
        if len(tokens) == 4 and tokens[3].text == "O":
            return tokens[1].text, self.integer(tokens[2]), Point()
        if len(tokens) != 5:
            self.error_at(tokens[0], "Expected 'O' or two coordinates")
        point = Point(self.element(tokens[3]), self.element(tokens[4]))
        return tokens[1].text, self.integer(tokens[2]), point

    def poly(self, tokens):
        self.expect(tokens, "begin", 5)
        attrs = self.attrs(tokens[3:])
        nvars = self.integer(self.attr(attrs, "nvars", tokens[0]))
        descent = self.flag(self.attr(attrs, "descent", tokens[0]))
        terms = {}
        while True:
            line = self.next_line("a polynomial")
            if line[0].text == "end":
                break
            self.expect(line, "term")
            if len(line) < 2:
                self.error_at(line[0], "Expected a coefficient")
            exps = [0] * nvars
            for factor in line[2:]:
                match = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor.text)
                if match is None:
                    self.error_at(factor, "Expected x<i> or x<i>^<e>")
                i = int(match.group(1)) - 1
                if not 0 <= i < nvars:
                    self.error_at(factor, "Variable out of range")
                exps[i] += int(match.group(2) or 1)
            exps = tuple(exps)
            if exps in terms:
                self.error_at(line[0], "Repeated monomial")
            terms[exps] = self.element(line[1])
        cls = DescentPoly if descent else MultiPoly
        return tokens[2].text, cls(self.params, nvars, terms)

    def named_poly(self, name):
        tokens = self.next_line("polynomial " + name)
        if len(tokens) < 3 or tokens[1].text != "poly" or (
            tokens[2].text != name
        ):
            self.error_at(tokens[0], "Expected polynomial {!r}".format(name))
        return self.poly(tokens)[1]

    def program(self):
        tokens = self.next_line("a program")
        self.expect(tokens, "begin", 3)
        if tokens[1].text != "program":
            self.error_at(tokens[1], "Expected a program")
        attrs = self.attrs(tokens[2:])
        nvars = self.integer(self.attr(attrs, "inputs", tokens[0]))
        consts = []
        ops = []
        outputs = None
        while True:
            line = self.next_line("a program")
            keyword = line[0].text
            if keyword == "end":
                break
            if keyword == "const":
                self.expect(line, "const", 2)
                consts.append(self.element(line[1]))
            elif keyword == "op":
                if len(line) == 3 and line[1].text == "neg":
                    ops.append(("neg", self.integer(line[2]), 0))
                    continue
                self.expect(line, "op", 4)
                ops.append((
                    line[1].text, self.integer(line[2]),
                    self.integer(line[3]),
                ))
            elif keyword == "outputs":
                outputs = [self.integer(t) for t in line[1:]]
            else:
                self.error_at(line[0], "Unexpected {!r} in a program".format(
                    keyword,
                ))
        if outputs is None:
            self.error_at(tokens[0], "Program has no outputs line")
        return self.checked(
            tokens[0], Program, self.params, nvars, consts, ops, outputs,
        )

    def function(self, tokens):
        self.expect(tokens, "begin")
        if len(tokens) < 3 or tokens[1].text != "function":
            self.error_at(tokens[0], "Expected a function")
        attrs = self.attrs(tokens[3:])

        def get(name):
            return self.attr(attrs, name, tokens[0])
        mode = get("mode")
        if mode.text not in MODES:
            self.error_at(mode, "Unknown mode {!r}".format(mode.text))
        arity = self.integer(get("arity"))
        nvars = self.integer(get("nvars"))
        twisted = self.flag(get("twisted"))
        spaces = self.spaces(get("spaces"))
        form = get("form")
        if form.text == "program":
            start = self.integer(get("start"))
            m = self.integer(get("m"))
            program = self.program()
            self.end("a function")
            return tokens[2].text, self.checked(
                tokens[0], PublishedFunction, mode.text, arity, nvars, None,
                program, start, m, twisted, spaces,
            )
        if form.text != "terms":
            self.error_at(form, "Unknown form {!r}".format(form.text))
        pieces = []
        while True:
            line = self.next_line("a function")
            if line[0].text == "end":
                break
            self.expect(line, "begin", 2)
            if line[1].text != "piece":
                self.error_at(line[1], "Expected a piece")
            g = self.named_poly("num")
            h = self.named_poly("den")
            self.end("a piece")
            pieces.append((g, h))
        return tokens[2].text, self.checked(
            tokens[0], PublishedFunction, mode.text, arity, nvars, pieces,
            None, 0, None, twisted, spaces,
        )

    def published_map(self, tokens):
        self.expect(tokens, "begin", 8)
        attrs = self.attrs(tokens[3:])

        def get(name):
            return self.attr(attrs, name, tokens[0])
        arity = self.integer(get("arity"))
        nvars = self.integer(get("nvars"))
        spaces = self.spaces(get("spaces"))
        out = get("out")
        out_space = None if out.text == "-" else self.space(out)
        counts_tok = get("counts")
        counts = self.integers(counts_tok, counts_tok.text)
        program = self.program()
        self.end("a map")
        return tokens[2].text, self.checked(
            tokens[0], PublishedMap, arity, nvars, program, counts, spaces,
            out_space,
        )

    def ncpoly_line(self, tokens):
        if len(tokens) not in (2, 3) or tokens[1].text != ":":
            self.error_at(tokens[0], "Expected 'coeff : i1.i2...ik'")
        c = self.integer(tokens[0])
        word = ()
        if len(tokens) == 3:
            word = tuple(self.integers(tokens[2], tokens[2].text, "."))
            if any(i < 1 for i in word):
                self.error_at(tokens[2], "Generator numbers start at 1")
        return word, c

    def ncpoly_block(self, ell):
        terms = {}
        while True:
            tokens = self.next_line("a non-commutative polynomial")
            if tokens[0].text == "end":
                return NCPoly(ell, terms)
            word, c = self.ncpoly_line(tokens)
            terms[word] = terms.get(word, 0) + c

    def matrix(self, keyword, size):
        rows = []
        for _ in range(size):
            tokens = self.next_line("a matrix")
            self.expect(tokens, keyword, size + 1)
            rows.append([self.element(t) for t in tokens[1:]])
        return rows

    def key(self, tokens):
        self.expect(tokens, "begin", 3)
        space = self.space(tokens[2])
        twist_line = self.next_line("a key")
        self.expect(twist_line, "twists")
        twists = []
        for token in twist_line[1:]:
            pair = self.integers(token, token.text)
            if len(pair) != 2:
                self.error_at(token, "Expected a,b")
            twists.append(tuple(pair))
        n = len(twists)
        delta = self.matrix("row", 3 * n)
        lambdas = []
        for j in range(n):
            header = self.next_line("a key")
            self.expect(header, "begin", 3)
            if header[1].text != "lambda" or self.integer(header[2]) != j:
                self.error_at(header[0], "Expected lambda {}".format(j))
            A = self.matrix("A", 3)
            B = self.matrix("B", 3)
            p = self.named_poly("p")
            q2 = self.named_poly("q")
            self.end("a local isomorphism")
            lambdas.append(self.checked(header[0], LocalQuadIso, A, B, p, q2))
        self.end("a key")
        return space, self.checked(
            tokens[0], BlindingKey, self.params, delta, lambdas, twists,
        )

    def generator(self, tokens):
        self.expect(tokens, "generator")
        if len(tokens) < 3:
            self.error_at(tokens[0], "Expected generator rows")
        rows = []
        for token in tokens[2:]:
            row = []
            for entry in token.text.split(","):
                col, colon, c = entry.partition(":")
                if not colon:
                    self.error_at(token, "Expected column:coefficient")
                row.append((self.integer(token, col), self.integer(token, c)))
            rows.append(tuple(row))
        return self.integer(tokens[1]), tuple(rows)


def parse_public(text: bytes) -> dict:
    """Parses a public instance file into its sections.
    """
    p = LineParser(text)
    p.header(writer.PUBLIC_HEADER)
    params = p.field()
    tokens = p.next_line("the instance line")
    p.expect(tokens, "instance", 5)
    attrs = p.attrs(tokens[1:])
    out = {
        "params": params,
        "ell": p.integer(p.attr(attrs, "ell", tokens[0])),
        "n": p.integer(p.attr(attrs, "n", tokens[0])),
        "N": p.integer(p.attr(attrs, "N", tokens[0])),
        "ddh": p.flag(p.attr(attrs, "ddh", tokens[0])),
        "identities": {}, "alpha_hat": None, "beta_hat": None,
        "zeta": None, "add_maps": {}, "double_maps": {}, "lines": {},
        "kernel": [],
    }
    phi = {}
    while True:
        tokens = p.read_line()
        if tokens is None:
            break
        keyword = tokens[0].text
        if keyword == "point":
            name, point = p.blinded_point(tokens)
            if name == "identity":
                out["identities"][point.space] = point
            elif name in ("alpha_hat", "beta_hat"):
                out[name] = point
            else:
                p.error_at(tokens[1], "Unknown point {!r}".format(name))
        elif keyword == "zeta":
            p.expect(tokens, "zeta", 2)
            out["zeta"] = p.element(tokens[1])
        elif keyword == "begin" and len(tokens) > 1:
            kind = tokens[1].text
            if kind == "map":
                name, pm = p.published_map(tokens)
                if name in ("add", "double"):
                    out[name + "_maps"][pm.out_space] = pm
                elif re.fullmatch(r"phi\d+", name):
                    phi[int(name[3:])] = pm
                else:
                    p.error_at(tokens[2], "Unknown map {!r}".format(name))
            elif kind == "lines":
                p.expect(tokens, "begin", 4)
                direction = (p.space(tokens[2]), p.space(tokens[3]))
                fns = {}
                for _ in range(3):
                    name, pf = p.function(p.next_line("line functions"))
                    fns[name] = pf
                if set(fns) != {"h", "g", "v"}:
                    p.error_at(tokens[0], "Expected functions h, g and v")
                p.end("line functions")
                out["lines"][direction] = fns
            elif kind == "kernel":
                while True:
                    line = p.next_line("kernel samples")
                    if line[0].text == "end":
                        break
                    p.expect(line, "begin", 2)
                    out["kernel"].append(p.ncpoly_block(out["ell"]))
            else:
                p.error_at(tokens[1], "Unexpected block {!r}".format(kind))
        else:
            p.error_at(tokens[0], "Unexpected {!r}".format(keyword))
    out["phi_maps"] = [phi[i] for i in sorted(phi)]
    if sorted(phi) != list(range(1, out["N"] + 1)):
        p.error("Expected maps phi1 to phi{}".format(out["N"]))
    for name in ("alpha_hat", "beta_hat", "zeta"):
        if out[name] is None:
            p.error("Missing {}".format(name))
    return out


def parse_secret(text: bytes) -> dict:
    """Parses a secret instance file into its sections.
    """
    p = LineParser(text)
    p.header(writer.SECRET_HEADER)
    params = p.field()
    tokens = p.next_line("the curve line")
    p.expect(tokens, "curve", 5)
    attrs = p.attrs(tokens[1:])
    curve = p.checked(
        tokens[0], CurveParams, params,
        p.element(p.attr(attrs, "a", tokens[0])),
        p.element(p.attr(attrs, "b", tokens[0])),
        p.integer(p.attr(attrs, "ell", tokens[0])),
        p.integer(p.attr(attrs, "order", tokens[0])),
    )
    points = {"basis": {}, "alpha": {}, "beta": {}}
    transforms = {}
    keys = {}
    generators = {}
    while True:
        tokens = p.read_line()
        if tokens is None:
            break
        keyword = tokens[0].text
        if keyword == "epoint":
            name, index, point = p.curve_point(tokens)
            if name not in points:
                p.error_at(tokens[1], "Unknown point {!r}".format(name))
            points[name][index] = point
        elif keyword == "transform":
            p.expect(tokens, "transform", 8)
            space = p.space(tokens[1])
            entries = [p.element(t) for t in tokens[4:]]
            T = p.checked(
                tokens[0], CurveTransform,
                [entries[:2], entries[2:]], p.flag(tokens[3]),
            )
            transforms.setdefault(space, {})[p.integer(tokens[2])] = T
        elif keyword == "begin" and len(tokens) > 1 and (
            tokens[1].text == "key"
        ):
            space, key = p.key(tokens)
            keys[space] = key
        elif keyword == "generator":
            index, rows = p.generator(tokens)
            generators[index] = rows
        else:
            p.error_at(tokens[0], "Unexpected {!r}".format(keyword))

    def ordered(mapping, what):
        if sorted(mapping) != list(range(len(mapping))):
            p.error("Incomplete {}".format(what))
        return [mapping[i] for i in sorted(mapping)]
    if sorted(generators) != list(range(1, len(generators) + 1)):
        p.error("Generators must be numbered from 1")
    return {
        "params": params,
        "curve": curve,
        "basis": ordered(points["basis"], "basis"),
        "alpha": ordered(points["alpha"], "alpha"),
        "beta": ordered(points["beta"], "beta"),
        "transforms": {
            s: ordered(ts, "transforms") for s, ts in transforms.items()
        },
        "keys": keys,
        "generators": [generators[i] for i in sorted(generators)],
    }


def parse_ncpoly(text: bytes, ell: int) -> NCPoly:
    """Parses ``coeff : i1.i2...ik`` lines.
    """
    p = LineParser(text)
    terms = {}
    while True:
        tokens = p.read_line()
        if tokens is None:
            return NCPoly(ell, terms)
        word, c = p.ncpoly_line(tokens)
        terms[word] = terms.get(word, 0) + c


def parse_hidden(text: bytes, params: FieldParams):
    """Parses a hidden function.

    :returns: The mode and a list of (reads, :class:`RationalFn`) pairs;
      each piece has 2 * len(reads) variables (u_1, w_1, u_2, w_2, ...).
    """
    p = LineParser(text, params)
    p.header(writer.HIDDEN_HEADER)
    tokens = p.next_line("the mode line")
    p.expect(tokens, "mode", 2)
    mode = tokens[1].text
    if mode not in MODES:
        p.error_at(tokens[1], "Unknown mode {!r}".format(mode))
    pieces = []
    while True:
        tokens = p.read_line()
        if tokens is None:
            break
        p.expect(tokens, "begin", 3)
        if tokens[1].text != "piece":
            p.error_at(tokens[1], "Expected a piece")
        reads_tok = p.attr(p.attrs(tokens[2:]), "reads", tokens[0])
        reads = []
        for entry in reads_tok.text.split(","):
            arg, colon, locality = entry.partition(":")
            if not colon:
                p.error_at(reads_tok, "Expected arg:locality")
            reads.append((
                p.integer(reads_tok, arg), p.integer(reads_tok, locality),
            ))
        num = p.named_poly("num")
        den = p.named_poly("den")
        p.end("a piece")
        for poly in (num, den):
            if poly.nvars != 2 * len(reads):
                p.error_at(tokens[0], "Pieces take two variables per read")
        pieces.append((reads, p.checked(tokens[0], RationalFn, num, den)))
    if not pieces:
        p.error("Hidden function has no pieces")
    return mode, pieces


def parse_function_file(text: bytes):
    """Parses a published-function file.

    :returns: The field parameters and the :class:`PublishedFunction`.
    """
    p = LineParser(text)
    p.header(writer.FUNCTION_HEADER)
    params = p.field()
    _, pf = p.function(p.next_line("a function"))
    return params, pf
