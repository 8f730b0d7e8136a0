import pytest
from hypothesis import given, strategies as st

from epc_ipv6 import (
    Epc,
    EpcScheme,
    Sgtin96Fields,
    bit_length,
    company_prefix_of,
    decode_sgtin96,
    encode_sgtin96,
    parse_tag_uri,
    render_tag_uri,
)
from epc_ipv6.epc import SGTIN96_PARTITIONS
from epc_ipv6.errors import (
    FieldRangeError,
    InvalidPartitionError,
    TagUriError,
    UnknownSchemeError,
    WrongHeaderError,
)

# frozen by the pre-build bit-layout oracle
GOLDEN_SGTIN96 = 0x3074257BF7194E4000001A85
GOLDEN_URI = "urn:epc:tag:sgtin-96:3.0614141.812345.6789"


@st.composite
def sgtin_fields(draw):
    partition = draw(st.integers(0, 6))
    _, company_digits, _, item_digits = SGTIN96_PARTITIONS[partition]
    return Sgtin96Fields(
        filter_value=draw(st.integers(0, 7)),
        partition=partition,
        company_prefix=draw(st.integers(0, 10**company_digits - 1)),
        item_reference=draw(st.integers(0, 10**item_digits - 1)),
        serial=draw(st.integers(0, 2**38 - 1)),
    )


class TestBitLength:
    def test_golden_epc_is_54_bits(self):
        # 2^53 <= 9611683854154598 < 2^54
        assert 2**53 <= 9611683854154598 < 2**54
        assert bit_length(9611683854154598) == 54

    def test_one(self):
        assert bit_length(1) == 1

    def test_zero_convention(self):
        assert bit_length(0) == 1

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bit_length(-1)

    @given(st.integers(min_value=1, max_value=2**200))
    def test_bracketing(self, value):
        n = bit_length(value)
        assert 2 ** (n - 1) <= value < 2**n


class TestSgtin96Codec:
    def test_golden_vector(self):
        fields = Sgtin96Fields(
            filter_value=3,
            partition=5,
            company_prefix=614141,
            item_reference=812345,
            serial=6789,
        )
        assert encode_sgtin96(fields) == GOLDEN_SGTIN96

    def test_all_zero_fields(self):
        fields = Sgtin96Fields(0, 0, 0, 0, 0)
        assert encode_sgtin96(fields) == 0x30 << 88

    def test_saturated_fields(self):
        # oracle-frozen: partition 6 is binary 110, so the tail is not all ones
        fields = Sgtin96Fields(7, 6, 2**20 - 1, 2**24 - 1, 2**38 - 1)
        assert encode_sgtin96(fields) == 0x30FBFFFFFFFFFFFFFFFFFFFF

    def test_header_always_0x30(self):
        for fields in (
            Sgtin96Fields(0, 0, 0, 0, 0),
            Sgtin96Fields(7, 6, 999999, 9999999, 2**38 - 1),
            Sgtin96Fields(3, 5, 614141, 812345, 6789),
        ):
            assert encode_sgtin96(fields) >> 88 == 0x30

    def test_decode_golden(self):
        fields = decode_sgtin96(GOLDEN_SGTIN96)
        assert fields == Sgtin96Fields(3, 5, 614141, 812345, 6789)

    @given(sgtin_fields())
    def test_round_trip(self, fields):
        assert decode_sgtin96(encode_sgtin96(fields)) == fields

    def test_wrong_header(self):
        with pytest.raises(WrongHeaderError):
            decode_sgtin96(0x31 << 88)

    def test_invalid_partition(self):
        with pytest.raises(InvalidPartitionError):
            decode_sgtin96((0x30 << 88) | (7 << 82))

    def test_field_overflow(self):
        with pytest.raises(FieldRangeError):
            Sgtin96Fields(0, 6, 2**20, 0, 0)
        with pytest.raises(FieldRangeError):
            Sgtin96Fields(0, 0, 0, 16, 0)
        with pytest.raises(FieldRangeError):
            Sgtin96Fields(0, 0, 0, 0, 2**38)
        with pytest.raises(FieldRangeError):
            Sgtin96Fields(8, 0, 0, 0, 0)
        with pytest.raises(InvalidPartitionError):
            Sgtin96Fields(0, 7, 0, 0, 0)


class TestParseTagUri:
    def test_sgtin96_example(self):
        epc = parse_tag_uri(GOLDEN_URI)
        assert epc.scheme is EpcScheme.SGTIN96
        assert epc.declared_bits == 96
        assert epc.serial_number == 6789
        assert epc.value == GOLDEN_SGTIN96
        assert epc.uri == GOLDEN_URI

    def test_all_zero_fields(self):
        epc = parse_tag_uri("urn:epc:tag:sgtin-96:0.000000000000.0.0")
        assert epc.serial_number == 0
        assert epc.value == 0x30 << 88

    def test_unknown_scheme(self):
        with pytest.raises(UnknownSchemeError):
            parse_tag_uri("urn:epc:tag:xyz-96:1.2.3")

    def test_usdod_not_parseable(self):
        with pytest.raises(UnknownSchemeError):
            parse_tag_uri("urn:epc:tag:usdod-96:1.123456.789")

    def test_giai96(self):
        epc = parse_tag_uri("urn:epc:tag:giai-96:0.0614141.5678")
        assert epc.scheme is EpcScheme.GIAI96
        assert epc.value is None
        assert epc.serial_number == 5678

    def test_sgln96(self):
        epc = parse_tag_uri("urn:epc:tag:sgln-96:0.0614141.12345.400")
        assert epc.scheme is EpcScheme.SGLN96
        assert epc.value is None
        assert epc.serial_number == 400

    def test_sgln96_partition0_empty_location(self):
        epc = parse_tag_uri("urn:epc:tag:sgln-96:0.123456789012..7")
        assert epc.serial_number == 7

    @pytest.mark.parametrize(
        "uri",
        [
            "urn:epc:id:sgtin:0614141.812345.6789",  # not a tag URI
            "urn:epc:tag:sgtin-96",                   # no fields
            "urn:epc:tag:sgtin-96:3.0614141.812345",  # missing serial
            "urn:epc:tag:sgtin-96:3.0614141.812345.6789.1",
            "urn:epc:tag:sgtin-96:3.0614141.8123x5.6789",
        ],
    )
    def test_malformed(self, uri):
        with pytest.raises(TagUriError):
            parse_tag_uri(uri)

    @pytest.mark.parametrize(
        "uri",
        [
            "urn:epc:tag:sgtin-96:8.0614141.812345.6789",   # filter > 7
            "urn:epc:tag:sgtin-96:3.06141.812345.6789",     # company too short
            "urn:epc:tag:sgtin-96:3.0614141.81234.6789",    # item digits mismatch
            "urn:epc:tag:sgtin-96:3.0614141.812345.274877906944",  # serial 2^38
            "urn:epc:tag:sgtin-96:3.0614141.812345.06789",  # serial leading zero
        ],
    )
    def test_field_range(self, uri):
        with pytest.raises(FieldRangeError):
            parse_tag_uri(uri)

    def test_giai_serial_width_depends_on_partition(self):
        # 6-digit company -> 62-bit asset field, 12-digit -> 42 bits
        parse_tag_uri(f"urn:epc:tag:giai-96:0.061414.{2**62 - 1}")
        with pytest.raises(FieldRangeError):
            parse_tag_uri(f"urn:epc:tag:giai-96:0.061414.{2**62}")
        parse_tag_uri(f"urn:epc:tag:giai-96:0.061414155555.{2**42 - 1}")
        with pytest.raises(FieldRangeError):
            parse_tag_uri(f"urn:epc:tag:giai-96:0.061414155555.{2**42}")


class TestRenderTagUri:
    def test_parse_render_identity_on_example(self):
        assert render_tag_uri(parse_tag_uri(GOLDEN_URI)) == GOLDEN_URI

    @given(sgtin_fields())
    def test_parse_render_identity_sgtin(self, fields):
        uri = (
            f"urn:epc:tag:sgtin-96:{fields.filter_value}"
            f".{fields.company_prefix:0{fields.company_digits}d}"
            f".{fields.item_reference:0{fields.item_digits}d}"
            f".{fields.serial}"
        )
        assert render_tag_uri(parse_tag_uri(uri)) == uri

    def test_serial_only_schemes_keep_parsed_text(self):
        uri = "urn:epc:tag:giai-96:0.0614141.5678"
        assert render_tag_uri(parse_tag_uri(uri)) == uri

    def test_unrenderable(self):
        raw = Epc(scheme=EpcScheme.RAW, declared_bits=8, value=42)
        with pytest.raises(TagUriError):
            render_tag_uri(raw)


class TestEpcInvariants:
    def test_value_must_fit_declared_bits(self):
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.RAW, declared_bits=8, value=256)

    def test_named_scheme_needs_serial(self):
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.SGTIN96, declared_bits=96, value=0x30 << 88)

    def test_named_scheme_width_fixed(self):
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.SGTIN96, declared_bits=64, serial_number=1)

    def test_sgtin_serial_field_width(self):
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.SGTIN96, declared_bits=96, serial_number=2**38)

    def test_raw_needs_value(self):
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.RAW, declared_bits=8)

    def test_raw_width_bounds(self):
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.RAW, declared_bits=0, value=0)
        with pytest.raises(ValueError):
            Epc(scheme=EpcScheme.RAW, declared_bits=257, value=0)
        Epc(scheme=EpcScheme.RAW, declared_bits=256, value=2**256 - 1)


class TestCompanyPrefix:
    def test_from_sgtin_value(self):
        epc = parse_tag_uri(GOLDEN_URI)
        assert company_prefix_of(epc) == "0614141"

    def test_from_stored_uri(self):
        epc = parse_tag_uri("urn:epc:tag:giai-96:0.0614141.5678")
        assert company_prefix_of(epc) == "0614141"

    def test_raw_has_none(self):
        raw = Epc(scheme=EpcScheme.RAW, declared_bits=8, value=42)
        assert company_prefix_of(raw) is None
