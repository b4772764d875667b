"""Machine-readable validation diagnostics and error types shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """One axiom violation: which rule broke, on which cells."""

    code: str
    cells: tuple[str, ...]
    axiom: str
    message: str

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "cells": list(self.cells),
            "axiom": self.axiom,
            "message": self.message,
        }


def sort_key(d: Diagnostic) -> tuple:
    return (d.code, d.cells, d.message)


def make(code: str, cells, axiom: str, message: str) -> Diagnostic:
    return Diagnostic(code, tuple(cells), axiom, message)


class ValidationError(Exception):
    """Raised by the *_validate wrappers; carries the full diagnostic list."""

    def __init__(self, diagnostics):
        self.diagnostics = sorted(diagnostics, key=sort_key)
        lines = "; ".join(f"{d.code}({','.join(d.cells)})" for d in self.diagnostics[:8])
        more = "" if len(self.diagnostics) <= 8 else f" (+{len(self.diagnostics) - 8} more)"
        super().__init__(f"{len(self.diagnostics)} violation(s): {lines}{more}")


class ParseError(Exception):
    """Malformed document; carries an optional (line, column) location."""

    def __init__(self, message: str, location: tuple[int, int] | None = None):
        self.location = location
        if location is not None:
            message = f"{message} (line {location[0]}, column {location[1]})"
        super().__init__(message)


class InternalError(Exception):
    """A guard tripped on a state that valid input cannot reach."""


class IncomparableLoops(Exception):
    """Two loops admit no order; only reachable from an invalid complex."""


class NotAnIsomorphism(Exception):
    """A proposed structure map fails the isomorphism conditions."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures[:6]))


class RoundTripBroken(Exception):
    """A round-trip witness failed to verify; indicates an implementation bug."""
