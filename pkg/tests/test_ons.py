import pytest

from epc_ipv6 import (
    Epc,
    EpcScheme,
    OnsRecord,
    OnsRegistry,
    load_registry,
    parse_ipv6,
    parse_tag_uri,
    resolve,
)
from epc_ipv6.errors import DuplicatePatternError, NoMatchError, RegistryError

from conftest import ONS_TEXT

A = "2001:db8::a"
B = "2001:db8::b"


def record(pattern, text):
    return OnsRecord(pattern=pattern, ons_ip=parse_ipv6(text))


@pytest.fixture
def sgtin_epc():
    return parse_tag_uri("urn:epc:tag:sgtin-96:3.0614141.812345.6789")


@pytest.fixture
def raw():
    return Epc(scheme=EpcScheme.RAW, declared_bits=16, value=1234)


class TestLoadRegistry:
    def test_single_wildcard_entry(self, registry_file):
        registry = load_registry(registry_file([{"pattern": "*", "ons_ip": ONS_TEXT}]))
        assert len(registry.records) == 1
        assert str(registry.records[0].ons_ip) == ONS_TEXT

    def test_ons_ip_normalized_on_load(self, registry_file):
        path = registry_file(
            [{"pattern": "*", "ons_ip": "3ffe:ffff:4004:1952:0000:7251:bc9b:a73f"}]
        )
        assert str(load_registry(path).records[0].ons_ip) == ONS_TEXT

    def test_empty_registry(self, registry_file, raw):
        registry = load_registry(registry_file([]))
        assert registry.records == ()
        with pytest.raises(NoMatchError):
            resolve(registry, raw)

    def test_duplicate_pattern(self, registry_file):
        path = registry_file(
            [
                {"pattern": "sgtin-96", "ons_ip": A},
                {"pattern": "sgtin-96", "ons_ip": B},
            ]
        )
        with pytest.raises(DuplicatePatternError):
            load_registry(path)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(RegistryError):
            load_registry(tmp_path / "missing.json")

    @pytest.mark.parametrize(
        "entries",
        [
            [{"pattern": "*"}],
            [{"pattern": "*", "ons_ip": ONS_TEXT, "extra": 1}],
            [{"pattern": "*", "ons_ip": "not-an-address"}],
            [{"pattern": "nope-96", "ons_ip": ONS_TEXT}],
            [{"pattern": "sgtin-96:12x4", "ons_ip": ONS_TEXT}],
            ["just a string"],
            {"pattern": "*", "ons_ip": ONS_TEXT},
        ],
    )
    def test_malformed_entries(self, registry_file, entries):
        with pytest.raises(RegistryError):
            load_registry(registry_file(entries))

    def test_not_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("[{", encoding="utf-8")
        with pytest.raises(RegistryError):
            load_registry(path)


class TestResolve:
    def test_company_beats_scheme_and_wildcard(self, registry_file, sgtin_epc):
        path = registry_file(
            [
                {"pattern": "*", "ons_ip": B},
                {"pattern": "sgtin-96", "ons_ip": B},
                {"pattern": "sgtin-96:0614141", "ons_ip": A},
            ]
        )
        assert str(resolve(load_registry(path), sgtin_epc)) == A

    def test_scheme_beats_wildcard(self, registry_file, sgtin_epc):
        path = registry_file(
            [
                {"pattern": "*", "ons_ip": B},
                {"pattern": "sgtin-96", "ons_ip": A},
            ]
        )
        assert str(resolve(load_registry(path), sgtin_epc)) == A

    def test_raw_matches_wildcard(self, registry_file, raw):
        registry = load_registry(registry_file([{"pattern": "*", "ons_ip": B}]))
        assert str(resolve(registry, raw)) == B

    def test_raw_does_not_match_sgtin(self, registry_file, raw):
        registry = load_registry(
            registry_file([{"pattern": "sgtin-96:0614141", "ons_ip": A}])
        )
        with pytest.raises(NoMatchError):
            resolve(registry, raw)

    def test_company_mismatch_falls_through(self, registry_file, sgtin_epc):
        path = registry_file(
            [
                {"pattern": "sgtin-96:9999999", "ons_ip": B},
                {"pattern": "sgtin-96", "ons_ip": A},
            ]
        )
        assert str(resolve(load_registry(path), sgtin_epc)) == A

    def test_company_match_via_stored_uri(self, registry_file):
        giai = parse_tag_uri("urn:epc:tag:giai-96:0.0614141.5678")
        path = registry_file([{"pattern": "giai-96:0614141", "ons_ip": A}])
        assert str(resolve(load_registry(path), giai)) == A

    def test_registry_method_alias(self, registry_file, raw):
        registry = load_registry(registry_file([{"pattern": "*", "ons_ip": B}]))
        assert registry.resolve(raw) == resolve(registry, raw)

    def test_deterministic(self, registry_file, sgtin_epc):
        registry = load_registry(
            registry_file([{"pattern": "*", "ons_ip": A}])
        )
        results = {resolve(registry, sgtin_epc).value for _ in range(10)}
        assert len(results) == 1

    def test_less_specific_addition_never_shadows(self, registry_file, sgtin_epc):
        specific_only = load_registry(
            registry_file([{"pattern": "sgtin-96:0614141", "ons_ip": A}], "a.json")
        )
        with_fallbacks = load_registry(
            registry_file(
                [
                    {"pattern": "sgtin-96:0614141", "ons_ip": A},
                    {"pattern": "sgtin-96", "ons_ip": B},
                    {"pattern": "*", "ons_ip": B},
                ],
                "b.json",
            )
        )
        assert resolve(specific_only, sgtin_epc) == resolve(with_fallbacks, sgtin_epc)


class TestOrdering:
    def test_records_sorted_most_specific_first(self):
        registry = OnsRegistry(
            records=(
                record("*", B),
                record("sgtin-96", A),
                record("sgtin-96:0614141", A),
            )
        )
        assert [r.pattern for r in registry.records] == [
            "sgtin-96:0614141",
            "sgtin-96",
            "*",
        ]

    def test_duplicate_detected_on_construction(self):
        with pytest.raises(DuplicatePatternError):
            OnsRegistry(records=(record("*", A), record("*", B)))
