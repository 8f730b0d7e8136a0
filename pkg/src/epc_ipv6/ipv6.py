"""128-bit IPv6 address values and their canonical text form.

Text conversion is delegated to the stdlib ``ipaddress`` module, whose
output follows the canonical rules this package promises: lowercase hex,
no leading zeros inside a group, the longest zero run (leftmost on ties)
compressed to ``::``, and a single zero group never compressed.
"""

from __future__ import annotations

import ipaddress
from dataclasses import dataclass

from .errors import Ipv6TextError


@dataclass(frozen=True, order=True)
class Ipv6Address:
    """An IPv6 address as one unsigned 128-bit integer."""

    value: int

    def __post_init__(self):
        if not 0 <= self.value < 1 << 128:
            raise ValueError(f"address value {self.value:#x} does not fit 128 bits")

    def __str__(self) -> str:
        return format_canonical(self)


def parse_ipv6(text: str) -> Ipv6Address:
    """Parse full, zero-suppressed, or ``::``-compressed IPv6 text."""
    if not isinstance(text, str):
        raise Ipv6TextError(f"expected IPv6 text, got {type(text).__name__}")
    if "%" in text:
        raise Ipv6TextError(f"zone identifiers are not addresses: {text!r}")
    try:
        return Ipv6Address(int(ipaddress.IPv6Address(text)))
    except ipaddress.AddressValueError as exc:
        raise Ipv6TextError(str(exc)) from None


def format_canonical(addr: Ipv6Address) -> str:
    """Canonical text form of an address; inverse of :func:`parse_ipv6`."""
    return str(ipaddress.IPv6Address(addr.value))
