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

"""Straight-line programs over K.

A published piece whose hidden function is a transported group law has a
total degree in the hundreds, far too many terms to expand. Such pieces are
published as programs: the same polynomial, written as a sequence of ring
operations. Programs are traced by evaluating ordinary polynomial code on
:class:`Wire` objects.

Register layout: inputs first, then constants, then one register per
operation.
"""

from .errors import ParameterError
from .field import FieldElement, FieldParams
from .poly import MultiPoly
from typing import List, Sequence, Tuple

OPCODES = ("add", "sub", "mul", "neg", "pow")

Op = Tuple[str, int, int]


class Program:
    """An immutable straight-line program.

    :param field: The field the constants live in.
    :param nvars: The number of inputs.
    :param consts: Constant registers.
    :param ops: ``(opcode, a, b)`` triples. ``a`` and ``b`` are register
      indices, except that ``b`` is the exponent for ``pow`` and ignored for
      ``neg``.
    :param outputs: Registers returned by :meth:`evaluate`.
    """
    def __init__(self, field: FieldParams, nvars: int,
                 consts: Sequence[FieldElement], ops: Sequence[Op],
                 outputs: Sequence[int]):
        self.field = field
        self.nvars = nvars
        self.consts = tuple(consts)
        self.ops = tuple(ops)
        self.outputs = tuple(outputs)
        limit = nvars + len(self.consts)
        for i, (op, a, b) in enumerate(self.ops):
            if op not in OPCODES:
                raise ParameterError("Unknown opcode: {}".format(op))
            if not 0 <= a < limit + i:
                raise ParameterError("Operand out of range in op {}".format(i))
            if op in ("add", "sub", "mul") and not 0 <= b < limit + i:
                raise ParameterError("Operand out of range in op {}".format(i))
            if op == "pow" and b < 0:
                raise ParameterError("Negative exponent in op {}".format(i))
        total = limit + len(self.ops)
        if any(not 0 <= r < total for r in self.outputs):
            raise ParameterError("Output register out of range.")

    @property
    def size(self) -> int:
        return len(self.ops)

    def evaluate(self, point: Sequence) -> list:
        """Runs the program. The inputs may be field elements or elements of
        any ring accepting field-element constants.
        """
        if len(point) != self.nvars:
            raise ParameterError("Expected {} inputs".format(self.nvars))
        regs = list(point)
        regs.extend(self.consts)
        append = regs.append
        for op, a, b in self.ops:
            if op == "mul":
                append(regs[a] * regs[b])
            elif op == "add":
                append(regs[a] + regs[b])
            elif op == "sub":
                append(regs[a] - regs[b])
            elif op == "pow":
                append(regs[a] ** b)
            else:
                append(-regs[a])
        return [regs[r] for r in self.outputs]

    def expand(self) -> List[MultiPoly]:
        """Expands every output into term form. Only feasible for
        low-degree programs.
        """
        variables = MultiPoly.variables(self.field, self.nvars)
        out = []
        for value in self.evaluate(variables):
            if not isinstance(value, MultiPoly):
                value = MultiPoly.constant(self.field, self.nvars, value)
            out.append(value)
        return out

    def degrees(self) -> List[int]:
        """Upper bounds on the total degree of every output.
        """
        deg = [1] * self.nvars
        deg.extend(-1 if not c else 0 for c in self.consts)
        for op, a, b in self.ops:
            if op == "mul":
                deg.append(deg[a] + deg[b])
            elif op in ("add", "sub"):
                deg.append(max(deg[a], deg[b]))
            elif op == "pow":
                deg.append(deg[a] * b)
            else:
                deg.append(deg[a])
        return [deg[r] for r in self.outputs]

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return (
            self.nvars == other.nvars and self.consts == other.consts and
            self.ops == other.ops and self.outputs == other.outputs
        )

    def __repr__(self):
        return "Program({} inputs, {} ops, {} outputs)".format(
            self.nvars, len(self.ops), len(self.outputs),
        )


class Wire:
    """A register of a :class:`ProgramBuilder` under construction. Supports
    the ring operations, each of which appends an operation.
    """
    __slots__ = ("builder", "index")

    def __init__(self, builder: "ProgramBuilder", index: int):
        self.builder = builder
        self.index = index

    @property
    def degree(self) -> int:
        return self.builder.degree(self)

    def __add__(self, other):
        return self.builder.op("add", self, other)

    def __radd__(self, other):
        return self.builder.op("add", other, self)

    def __sub__(self, other):
        return self.builder.op("sub", self, other)

    def __rsub__(self, other):
        return self.builder.op("sub", other, self)

    def __mul__(self, other):
        return self.builder.op("mul", self, other)

    def __rmul__(self, other):
        return self.builder.op("mul", other, self)

    def __neg__(self):
        return self.builder.op("neg", self, None)

    def __pow__(self, n: int):
        return self.builder.pow(self, n)

    def __repr__(self):
        return "Wire({})".format(self.index)


class ProgramBuilder:
    """Records ring operations on wires into a :class:`Program`, folding
    constants, sharing repeated subexpressions and dropping operations no
    output depends on.
    """
    def __init__(self, field: FieldParams, nvars: int):
        self.field = field
        self.nvars = nvars
        self._const_regs = {}
        self._kinds = []
        self._memo = {}
        self._degrees = [1] * nvars
        self._values = {}
        self.inputs = [Wire(self, i) for i in range(nvars)]

    def const(self, value) -> Wire:
        value = self.field.element(value)
        index = self._const_regs.get(value)
        if index is None:
            index = self.nvars + len(self._kinds)
            self._kinds.append(("const", value))
            self._degrees.append(0 if value else -1)
            self._const_regs[value] = index
            self._values[index] = value
        return Wire(self, index)

    def _wire(self, x) -> Wire:
        if isinstance(x, Wire):
            if x.builder is not self:
                raise ParameterError("Wire belongs to another program.")
            return x
        if isinstance(x, (FieldElement, int)):
            return self.const(x)
        raise TypeError("Cannot use {!r} in a program".format(x))

    def degree(self, wire: Wire) -> int:
        return self._degrees[wire.index]

    def _constant_value(self, wire):
        return self._values.get(wire.index)

    def op(self, opcode: str, a, b) -> Wire:
        a = self._wire(a)
        b = None if b is None else self._wire(b)
        va = self._constant_value(a)
        vb = None if b is None else self._constant_value(b)
        zero, one = self.field.zero, self.field.one
        if opcode == "neg":
            if va is not None:
                return self.const(-va)
        elif va is not None and vb is not None:
            if opcode == "add":
                return self.const(va + vb)
            if opcode == "sub":
                return self.const(va - vb)
            return self.const(va * vb)
        elif opcode == "add":
            if va == zero:
                return b
            if vb == zero:
                return a
        elif opcode == "sub":
            if vb == zero:
                return a
            if va == zero:
                return self.op("neg", b, None)
        elif opcode == "mul":
            if va == zero or vb == zero:
                return self.const(0)
            if va == one:
                return b
            if vb == one:
                return a
        ia = a.index
        ib = None if b is None else b.index
        if opcode in ("add", "mul") and ib < ia:
            ia, ib = ib, ia
        return self._emit(opcode, ia, ib)

    def pow(self, wire, n: int) -> Wire:
        wire = self._wire(wire)
        if n < 0:
            raise ParameterError("Negative exponent.")
        value = self._constant_value(wire)
        if value is not None:
            return self.const(value ** n)
        if n == 0:
            return self.const(1)
        if n == 1:
            return wire
        return self._emit("pow", wire.index, n)

    def _emit(self, opcode, a, b) -> Wire:
        key = (opcode, a, b)
        index = self._memo.get(key)
        if index is not None:
            return Wire(self, index)
        da = self._degrees[a]
        if opcode == "mul":
            degree = da + self._degrees[b]
        elif opcode in ("add", "sub"):
            degree = max(da, self._degrees[b])
        elif opcode == "pow":
            degree = da * b
        else:
            degree = da
        index = self.nvars + len(self._kinds)
        self._kinds.append(("op", key))
        self._degrees.append(degree)
        self._memo[key] = index
        return Wire(self, index)

    def build(self, outputs: Sequence) -> Program:
        """Finishes the program.

        :param outputs: Wires, field elements or integers.
        """
        outs = [self._wire(x).index for x in outputs]
        live = set(outs)
        for offset in range(len(self._kinds) - 1, -1, -1):
            index = self.nvars + offset
            if index not in live:
                continue
            kind, payload = self._kinds[offset]
            if kind == "op":
                op, a, b = payload
                live.add(a)
                if op in ("add", "sub", "mul"):
                    live.add(b)
        # Renumber: inputs, then live constants, then live ops in order.
        remap = {i: i for i in range(self.nvars)}
        consts = []
        for offset, (kind, payload) in enumerate(self._kinds):
            index = self.nvars + offset
            if kind == "const" and index in live:
                remap[index] = self.nvars + len(consts)
                consts.append(payload)
        ops = []
        base = self.nvars + len(consts)
        for offset, (kind, payload) in enumerate(self._kinds):
            index = self.nvars + offset
            if kind != "op" or index not in live:
                continue
            op, a, b = payload
            if op in ("add", "sub", "mul"):
                ops.append((op, remap[a], remap[b]))
            elif op == "pow":
                ops.append((op, remap[a], b))
            else:
                ops.append((op, remap[a], 0))
            remap[index] = base + len(ops) - 1
        return Program(
            self.field, self.nvars, consts, ops, [remap[r] for r in outs],
        )
