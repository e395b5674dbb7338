"""Straight-line product programs compiled from chains.

Register k holds x**a_k; instruction k multiplies the registers named by
step k of the chain.  Evaluating modulo p gives x**d mod p, which is how
the tests tie chains back to exponentiation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import Chain
from .config import MAX_VALUE
from .errors import Overflow


@dataclass(frozen=True)
class Instruction:
    dest: int
    operands: tuple[int, ...]

    def render(self) -> str:
        return f"r{self.dest} = " + " * ".join(f"r{j}" for j in self.operands)


@dataclass(frozen=True)
class StraightLineProgram:
    g: int
    registers: int
    instructions: tuple[Instruction, ...]
    output: int
    d: int

    def __post_init__(self):
        for ins in self.instructions:
            if not 2 <= len(ins.operands) <= self.g:
                raise ValueError(f"r{ins.dest}: {len(ins.operands)} operands, allowed 2..{self.g}")
            if max(ins.operands) >= ins.dest:
                raise ValueError(f"r{ins.dest} reads a register that is not computed yet")

    def __len__(self) -> int:
        return len(self.instructions)

    def degrees(self) -> list[int]:
        """Exponent of x held by each register."""
        deg = [1] + [0] * (self.registers - 1)
        for ins in self.instructions:
            deg[ins.dest] = sum(deg[j] for j in ins.operands)
        return deg

    def listing(self) -> str:
        return "\n".join(ins.render() for ins in self.instructions)


def compile(chain: Chain) -> StraightLineProgram:
    """One product instruction per chain step; r0 holds the base."""
    instructions = tuple(Instruction(i, step) for i, step in enumerate(chain.steps, start=1))
    return StraightLineProgram(chain.g, len(chain.elements), instructions, len(chain.elements) - 1, chain.d)


def _check_modulus(base: int, modulus: int) -> None:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if modulus * modulus > MAX_VALUE:
        raise Overflow(f"modulus {modulus} too large: its square exceeds 2**63 - 1")
    if not 0 <= base < modulus:
        raise ValueError("base must lie in [0, modulus)")


def evaluate_mod(program: StraightLineProgram, base: int, modulus: int) -> int:
    """base**d mod modulus, running the program one product at a time."""
    _check_modulus(base, modulus)
    regs = [base] + [0] * (program.registers - 1)
    for ins in program.instructions:
        acc = regs[ins.operands[0]]
        for j in ins.operands[1:]:
            acc = acc * regs[j] % modulus
        regs[ins.dest] = acc
    return regs[program.output] % modulus


def square_and_multiply(base: int, exponent: int, modulus: int) -> int:
    """Left-to-right binary exponentiation, kept apart from the chain code."""
    _check_modulus(base, modulus)
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    result = 1 % modulus
    for bit in bin(exponent)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result
