"""Static ONS registry: map EPCs to the IPv6 address of their ONS server.

The registry file is a JSON array of ``{"pattern": ..., "ons_ip": ...}``
objects. A pattern is a scheme name with an optional company-prefix
literal (``"sgtin-96:0614141"``, ``"sgtin-96"``) or the wildcard ``"*"``;
lookups prefer scheme+company over scheme over wildcard.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .epc import Epc, EpcScheme, company_prefix_of
from .errors import DuplicatePatternError, Ipv6TextError, NoMatchError, RegistryError
from .ipv6 import Ipv6Address, parse_ipv6

WILDCARD = "*"

_SCHEME_NAMES = {scheme.value for scheme in EpcScheme}


def _split_pattern(pattern: str) -> tuple[str | None, str | None]:
    """Validate a pattern and split it into (scheme name, company prefix)."""
    if pattern == WILDCARD:
        return None, None
    scheme_name, sep, company = pattern.partition(":")
    if scheme_name not in _SCHEME_NAMES:
        raise RegistryError(f"pattern {pattern!r} names unknown scheme {scheme_name!r}")
    if not sep:
        return scheme_name, None
    if not (company and company.isascii() and company.isdigit()):
        raise RegistryError(f"pattern {pattern!r} has a non-decimal company prefix")
    return scheme_name, company


@dataclass(frozen=True)
class OnsRecord:
    """One registry entry: a pattern and the ONS address it maps to."""

    pattern: str
    ons_ip: Ipv6Address

    def __post_init__(self):
        _split_pattern(self.pattern)

    @property
    def specificity(self) -> int:
        """0 = scheme+company, 1 = scheme, 2 = wildcard."""
        scheme_name, company = _split_pattern(self.pattern)
        if scheme_name is None:
            return 2
        return 1 if company is None else 0

    def matches(self, epc: Epc) -> bool:
        scheme_name, company = _split_pattern(self.pattern)
        if scheme_name is None:
            return True
        if scheme_name != epc.scheme.value:
            return False
        return company is None or company == company_prefix_of(epc)


@dataclass(frozen=True)
class OnsRegistry:
    """Immutable collection of records, kept most-specific-first."""

    records: tuple[OnsRecord, ...]

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.pattern in seen:
                raise DuplicatePatternError(f"duplicate pattern {record.pattern!r}")
            seen.add(record.pattern)
        ordered = sorted(
            range(len(self.records)), key=lambda i: (self.records[i].specificity, i)
        )
        object.__setattr__(
            self, "records", tuple(self.records[i] for i in ordered)
        )

    def resolve(self, epc: Epc) -> Ipv6Address:
        return resolve(self, epc)


def load_registry(path: str | Path) -> OnsRegistry:
    """Load and validate a registry file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise RegistryError(f"cannot read registry {path}: {exc}") from exc
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegistryError(f"registry {path} is not valid JSON: {exc}") from exc
    if not isinstance(entries, list):
        raise RegistryError(f"registry {path} must be a JSON array of entries")

    records = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or set(entry) != {"pattern", "ons_ip"}:
            raise RegistryError(
                f"registry entry {i} must be an object with exactly "
                f"the keys 'pattern' and 'ons_ip'"
            )
        pattern, ons_text = entry["pattern"], entry["ons_ip"]
        if not isinstance(pattern, str) or not isinstance(ons_text, str):
            raise RegistryError(f"registry entry {i} has non-string values")
        try:
            ons_ip = parse_ipv6(ons_text)
        except Ipv6TextError as exc:
            raise RegistryError(f"registry entry {i}: {exc}") from exc
        records.append(OnsRecord(pattern=pattern, ons_ip=ons_ip))
    return OnsRegistry(records=tuple(records))


def resolve(registry: OnsRegistry, epc: Epc) -> Ipv6Address:
    """ONS address of the most specific record matching the EPC."""
    for record in registry.records:
        if record.matches(epc):
            return record.ons_ip
    raise NoMatchError(f"no registry record matches {epc.scheme.value} EPC")
