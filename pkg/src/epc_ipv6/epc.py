"""EPC tag URIs, the SGTIN-96 binary codec, and bit-width primitives.

EPC tag URIs look like ``urn:epc:tag:sgtin-96:3.0614141.812345.6789``:
a scheme name followed by dot-separated decimal fields. The character
length of the company-prefix field is significant (leading zeros count)
and selects the partition row that splits 44 bits between company prefix
and item reference in the binary form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    FieldRangeError,
    InvalidPartitionError,
    TagUriError,
    UnknownSchemeError,
    WrongHeaderError,
)


class EpcScheme(str, Enum):
    """EPC scheme families this library knows about.

    ``RAW`` stands for an opaque numeric EPC of a declared bit width,
    used when the scheme of a code is unknown or irrelevant.
    """

    SGTIN96 = "sgtin-96"
    GIAI96 = "giai-96"
    SGLN96 = "sgln-96"
    USDOD96 = "usdod-96"
    RAW = "raw"


SGTIN96_HEADER = 0x30
SGTIN96_SERIAL_BITS = 38

# partition -> (company_bits, company_digits, item_bits, item_digits);
# company_bits + item_bits == 44 on every row
SGTIN96_PARTITIONS: dict[int, tuple[int, int, int, int]] = {
    0: (40, 12, 4, 1),
    1: (37, 11, 7, 2),
    2: (34, 10, 10, 3),
    3: (30, 9, 14, 4),
    4: (27, 8, 17, 5),
    5: (24, 7, 20, 6),
    6: (20, 6, 24, 7),
}

_COMPANY_DIGITS_TO_PARTITION = {
    digits: p for p, (_, digits, _, _) in SGTIN96_PARTITIONS.items()
}

# fixed widths of the 96-bit schemes
_DECLARED_BITS = {
    EpcScheme.SGTIN96: 96,
    EpcScheme.GIAI96: 96,
    EpcScheme.SGLN96: 96,
    EpcScheme.USDOD96: 96,
}

# widest serial field each scheme can carry (GIAI-96 at partition 6)
_MAX_SERIAL_BITS = {
    EpcScheme.SGTIN96: 38,
    EpcScheme.GIAI96: 62,
    EpcScheme.SGLN96: 41,
    EpcScheme.USDOD96: 36,
}

_PARSEABLE_SCHEMES = (EpcScheme.SGTIN96, EpcScheme.GIAI96, EpcScheme.SGLN96)

_URI_PREFIX = "urn:epc:tag:"


def bit_length(value: int) -> int:
    """Position of the most significant one-bit, 1-based.

    ``bit_length(0)`` is 1 by convention so that width arithmetic stays
    defined for a zero payload; zero is outside the injectivity guarantee
    of the derivation methods.
    """
    if value < 0:
        raise ValueError(f"value must be non-negative, got {value}")
    return value.bit_length() or 1


@dataclass(frozen=True)
class Sgtin96Fields:
    """The five SGTIN-96 fields below the fixed 0x30 header byte.

    Bounds are the binary field widths; the stricter per-partition digit
    counts of the URI grammar are enforced when parsing or rendering URIs.
    """

    filter_value: int
    partition: int
    company_prefix: int
    item_reference: int
    serial: int

    def __post_init__(self):
        if not 0 <= self.filter_value <= 7:
            raise FieldRangeError(f"filter value {self.filter_value} outside 0..7")
        if self.partition not in SGTIN96_PARTITIONS:
            raise InvalidPartitionError(f"partition {self.partition} outside 0..6")
        company_bits, _, item_bits, _ = SGTIN96_PARTITIONS[self.partition]
        if not 0 <= self.company_prefix < 1 << company_bits:
            raise FieldRangeError(
                f"company prefix {self.company_prefix} overflows {company_bits} bits"
            )
        if not 0 <= self.item_reference < 1 << item_bits:
            raise FieldRangeError(
                f"item reference {self.item_reference} overflows {item_bits} bits"
            )
        if not 0 <= self.serial < 1 << SGTIN96_SERIAL_BITS:
            raise FieldRangeError(
                f"serial {self.serial} overflows {SGTIN96_SERIAL_BITS} bits"
            )

    @property
    def company_digits(self) -> int:
        return SGTIN96_PARTITIONS[self.partition][1]

    @property
    def item_digits(self) -> int:
        return SGTIN96_PARTITIONS[self.partition][3]


@dataclass(frozen=True)
class Epc:
    """A parsed Electronic Product Code.

    ``value`` is the full binary EPC as one unsigned integer; it is absent
    for schemes whose binary codec is out of scope (GIAI-96, SGLN-96),
    where only the serial/individual-reference component is kept.
    """

    scheme: EpcScheme
    declared_bits: int
    value: int | None = None
    serial_number: int | None = None
    uri: str | None = None

    def __post_init__(self):
        if self.scheme is EpcScheme.RAW:
            if not 1 <= self.declared_bits <= 256:
                raise ValueError(f"raw EPC width {self.declared_bits} outside 1..256")
            if self.value is None:
                raise ValueError("raw EPC must carry a numeric value")
        else:
            expected = _DECLARED_BITS[self.scheme]
            if self.declared_bits != expected:
                raise ValueError(
                    f"{self.scheme.value} is {expected} bits wide, "
                    f"got declared_bits={self.declared_bits}"
                )
            if self.serial_number is None:
                raise ValueError(f"{self.scheme.value} EPC must carry a serial number")
        if self.value is not None and not 0 <= self.value < 1 << self.declared_bits:
            raise ValueError(
                f"value {self.value:#x} does not fit {self.declared_bits} bits"
            )
        if self.serial_number is not None:
            max_bits = _MAX_SERIAL_BITS.get(self.scheme, self.declared_bits)
            if not 0 <= self.serial_number < 1 << max_bits:
                raise ValueError(
                    f"serial {self.serial_number} overflows the "
                    f"{max_bits}-bit serial field of {self.scheme.value}"
                )


def encode_sgtin96(fields: Sgtin96Fields) -> int:
    """Pack SGTIN-96 fields into the 96-bit binary form.

    Layout, most significant first: header 0x30 (8 bits), filter (3),
    partition (3), company prefix and item reference (44 split by the
    partition row), serial (38).
    """
    company_bits, _, item_bits, _ = SGTIN96_PARTITIONS[fields.partition]
    value = SGTIN96_HEADER
    value = (value << 3) | fields.filter_value
    value = (value << 3) | fields.partition
    value = (value << company_bits) | fields.company_prefix
    value = (value << item_bits) | fields.item_reference
    value = (value << SGTIN96_SERIAL_BITS) | fields.serial
    return value


def decode_sgtin96(value: int) -> Sgtin96Fields:
    """Exact inverse of :func:`encode_sgtin96`."""
    if not 0 <= value < 1 << 96:
        raise FieldRangeError(f"value {value:#x} does not fit 96 bits")
    header = value >> 88
    if header != SGTIN96_HEADER:
        raise WrongHeaderError(
            f"header {header:#04x} is not the SGTIN-96 header {SGTIN96_HEADER:#04x}"
        )
    partition = (value >> 82) & 0x7
    if partition not in SGTIN96_PARTITIONS:
        raise InvalidPartitionError(f"partition {partition} outside 0..6")
    company_bits, _, item_bits, _ = SGTIN96_PARTITIONS[partition]
    return Sgtin96Fields(
        filter_value=(value >> 85) & 0x7,
        partition=partition,
        company_prefix=(value >> (38 + item_bits)) & ((1 << company_bits) - 1),
        item_reference=(value >> 38) & ((1 << item_bits) - 1),
        serial=value & ((1 << SGTIN96_SERIAL_BITS) - 1),
    )


def parse_tag_uri(text: str) -> Epc:
    """Parse an ``urn:epc:tag:`` URI into an :class:`Epc`.

    SGTIN-96 URIs get their full binary ``value`` via the codec; GIAI-96
    and SGLN-96 URIs keep only the trailing serial/individual-reference
    field, which is all the serial-path derivation methods consume.
    """
    if not text.startswith(_URI_PREFIX):
        raise TagUriError(f"tag URI must start with {_URI_PREFIX!r}: {text!r}")
    scheme_name, sep, fields_text = text[len(_URI_PREFIX):].partition(":")
    if not sep or not fields_text:
        raise TagUriError(f"tag URI has no field section: {text!r}")
    try:
        scheme = EpcScheme(scheme_name)
    except ValueError:
        raise UnknownSchemeError(f"unknown tag scheme {scheme_name!r}") from None
    if scheme not in _PARSEABLE_SCHEMES:
        raise UnknownSchemeError(f"tag scheme {scheme_name!r} is not parseable")

    fields = fields_text.split(".")
    for field in fields:
        if field and not (field.isascii() and field.isdigit()):
            raise TagUriError(f"non-decimal field {field!r} in {text!r}")

    if scheme is EpcScheme.SGTIN96:
        return _parse_sgtin96(text, fields)
    if scheme is EpcScheme.GIAI96:
        return _parse_giai96(text, fields)
    return _parse_sgln96(text, fields)


def _parse_filter(field: str) -> int:
    if len(field) != 1:
        raise FieldRangeError(f"filter field {field!r} must be a single digit")
    value = int(field)
    if value > 7:
        raise FieldRangeError(f"filter value {value} outside 0..7")
    return value


def _parse_partition(company_field: str) -> int:
    partition = _COMPANY_DIGITS_TO_PARTITION.get(len(company_field))
    if partition is None:
        raise FieldRangeError(
            f"company prefix {company_field!r} must be 6..12 digits"
        )
    return partition


def _parse_serial(field: str, max_bits: int) -> int:
    # serials are plain numbers: no leading zeros in the URI form
    if not field or (len(field) > 1 and field[0] == "0"):
        raise FieldRangeError(f"serial field {field!r} must be a plain decimal number")
    serial = int(field)
    if serial >= 1 << max_bits:
        raise FieldRangeError(f"serial {serial} overflows {max_bits} bits")
    return serial


def _parse_sgtin96(text: str, fields: list[str]) -> Epc:
    if len(fields) != 4:
        raise TagUriError(f"sgtin-96 URI needs 4 fields, got {len(fields)}: {text!r}")
    filter_field, company_field, item_field, serial_field = fields
    filter_value = _parse_filter(filter_field)
    partition = _parse_partition(company_field)
    _, _, _, item_digits = SGTIN96_PARTITIONS[partition]
    if len(item_field) != item_digits:
        raise FieldRangeError(
            f"item reference {item_field!r} must be {item_digits} digits "
            f"for a {len(company_field)}-digit company prefix"
        )
    serial = _parse_serial(serial_field, SGTIN96_SERIAL_BITS)
    sgtin = Sgtin96Fields(
        filter_value=filter_value,
        partition=partition,
        company_prefix=int(company_field),
        item_reference=int(item_field),
        serial=serial,
    )
    return Epc(
        scheme=EpcScheme.SGTIN96,
        declared_bits=96,
        value=encode_sgtin96(sgtin),
        serial_number=serial,
        uri=text,
    )


def _parse_giai96(text: str, fields: list[str]) -> Epc:
    if len(fields) != 3:
        raise TagUriError(f"giai-96 URI needs 3 fields, got {len(fields)}: {text!r}")
    filter_field, company_field, asset_field = fields
    _parse_filter(filter_field)
    partition = _parse_partition(company_field)
    company_bits = SGTIN96_PARTITIONS[partition][0]
    # asset reference fills the 82 bits left after header/filter/partition
    serial = _parse_serial(asset_field, 82 - company_bits)
    return Epc(
        scheme=EpcScheme.GIAI96,
        declared_bits=96,
        serial_number=serial,
        uri=text,
    )


def _parse_sgln96(text: str, fields: list[str]) -> Epc:
    if len(fields) != 4:
        raise TagUriError(f"sgln-96 URI needs 4 fields, got {len(fields)}: {text!r}")
    filter_field, company_field, location_field, extension_field = fields
    _parse_filter(filter_field)
    partition = _parse_partition(company_field)
    location_digits = 12 - SGTIN96_PARTITIONS[partition][1]
    if len(location_field) != location_digits:
        raise FieldRangeError(
            f"location reference {location_field!r} must be {location_digits} "
            f"digits for a {len(company_field)}-digit company prefix"
        )
    serial = _parse_serial(extension_field, 41)
    return Epc(
        scheme=EpcScheme.SGLN96,
        declared_bits=96,
        serial_number=serial,
        uri=text,
    )


def render_tag_uri(epc: Epc) -> str:
    """Canonical tag URI for an EPC.

    SGTIN-96 URIs are rebuilt from the binary value, so render after parse
    is the identity on the text; schemes kept serial-only fall back to the
    URI recorded at parse time.
    """
    if epc.scheme is EpcScheme.SGTIN96 and epc.value is not None:
        f = decode_sgtin96(epc.value)
        return (
            f"{_URI_PREFIX}sgtin-96:{f.filter_value}"
            f".{f.company_prefix:0{f.company_digits}d}"
            f".{f.item_reference:0{f.item_digits}d}"
            f".{f.serial}"
        )
    if epc.uri is not None:
        return epc.uri
    raise TagUriError(f"no URI form available for {epc!r}")


def company_prefix_of(epc: Epc) -> str | None:
    """Company-prefix digits of an EPC, leading zeros preserved.

    Decoded from the binary value for SGTIN-96, read back from the parsed
    URI otherwise; ``None`` when the EPC carries neither.
    """
    if epc.scheme is EpcScheme.SGTIN96 and epc.value is not None:
        f = decode_sgtin96(epc.value)
        return f"{f.company_prefix:0{f.company_digits}d}"
    if epc.uri is not None and epc.uri.startswith(_URI_PREFIX):
        fields = epc.uri.rpartition(":")[2].split(".")
        if len(fields) >= 2:
            return fields[1]
    return None
