"""Command-line front end: derive, parse, resolve, and bench.

Exit codes: 0 success, 2 usage error, 3 parse error, 4 resolve error,
5 derive error. A JSON config file named by the EPC_IPV6_CONFIG
environment variable can preset the registry path, default method, and
output format; flags override the config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .addressing import AddressingMethodId, TagStandard, method_function
from .bench import CSV_HEADER, PopulationSpec, evaluate, generate_population
from .epc import Epc, EpcScheme, bit_length, parse_tag_uri
from .errors import (
    DerivationError,
    EpcIpv6Error,
    EvaluationError,
    Ipv6TextError,
    UnsatisfiableSpecError,
)
from .ipv6 import Ipv6Address, parse_ipv6
from .ons import load_registry

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOLVE = 4
EXIT_DERIVE = 5

CONFIG_ENV_VAR = "EPC_IPV6_CONFIG"

_METHOD_NAMES = [m.value for m in AddressingMethodId]
_GENERATOR_SCHEMES = [s.value for s in EpcScheme]


class CliError(Exception):
    """Failure with a stage tag and the process exit code to use."""

    def __init__(self, stage: str, message: str, exit_code: int):
        super().__init__(f"{stage}: {message}")
        self.exit_code = exit_code


def _stage_error(stage: str, exc: Exception, exit_code: int) -> CliError:
    return CliError(stage, f"{type(exc).__name__}: {exc}", exit_code)


@dataclass
class CliConfig:
    registry_path: str | None = None
    default_method: AddressingMethodId = AddressingMethodId.HYBRID_ONS
    output_format: str = "text"


def load_config(environ=os.environ) -> CliConfig:
    """Config from the file named by EPC_IPV6_CONFIG, or defaults."""
    path = environ.get(CONFIG_ENV_VAR)
    if not path:
        return CliConfig()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError("config", f"cannot load {path}: {exc}", EXIT_USAGE) from exc
    if not isinstance(data, dict):
        raise CliError("config", f"{path} must hold a JSON object", EXIT_USAGE)
    known = {"registry_path", "default_method", "output_format"}
    unknown = set(data) - known
    if unknown:
        raise CliError(
            "config", f"unknown keys in {path}: {sorted(unknown)}", EXIT_USAGE
        )
    config = CliConfig()
    if "registry_path" in data:
        config.registry_path = str(data["registry_path"])
    if "default_method" in data:
        try:
            config.default_method = AddressingMethodId(data["default_method"])
        except ValueError:
            raise CliError(
                "config", f"unknown default_method {data['default_method']!r}",
                EXIT_USAGE,
            ) from None
    if "output_format" in data:
        if data["output_format"] not in ("text", "structured"):
            raise CliError(
                "config", f"output_format must be 'text' or 'structured'", EXIT_USAGE
            )
        config.output_format = data["output_format"]
    return config


def _epc_from_arg(text: str) -> Epc:
    """Accept a tag URI, or a raw numeric EPC in hex (0x...) or decimal."""
    if text.startswith("urn:"):
        try:
            return parse_tag_uri(text)
        except EpcIpv6Error as exc:
            raise _stage_error("parse", exc, EXIT_PARSE) from exc
    try:
        value = int(text, 16) if text.lower().startswith("0x") else int(text, 10)
    except ValueError:
        raise CliError(
            "parse", f"{text!r} is neither a tag URI nor a number", EXIT_PARSE
        ) from None
    if value < 0 or value >= 1 << 256:
        raise CliError("parse", f"EPC value {text!r} outside 0..2^256", EXIT_PARSE)
    # a bare number is its own serial, per the raw-scheme convention
    return Epc(
        scheme=EpcScheme.RAW,
        declared_bits=bit_length(value),
        value=value,
        serial_number=value,
    )


def _ons_address(args, config: CliConfig, epc: Epc) -> Ipv6Address:
    """Single ONS source: --ons literal, or --registry / config lookup."""
    if args.ons is not None and args.registry is not None:
        raise CliError("usage", "give exactly one of --ons and --registry", EXIT_USAGE)
    if args.ons is not None:
        try:
            return parse_ipv6(args.ons)
        except Ipv6TextError as exc:
            raise _stage_error("parse", exc, EXIT_PARSE) from exc
    registry_path = args.registry or config.registry_path
    if registry_path is None:
        raise CliError(
            "usage", "an ONS source is required: --ons, --registry, or config",
            EXIT_USAGE,
        )
    return _resolve_epc(registry_path, epc)


def _resolve_epc(registry_path: str, epc: Epc) -> Ipv6Address:
    try:
        registry = load_registry(registry_path)
        return registry.resolve(epc)
    except EpcIpv6Error as exc:
        raise _stage_error("resolve", exc, EXIT_RESOLVE) from exc


def cmd_derive(args, config: CliConfig) -> int:
    epc = _epc_from_arg(args.epc)
    ons = _ons_address(args, config, epc)
    method = AddressingMethodId(args.method or config.default_method)
    try:
        address = method_function(
            method, salt=args.salt, standard=TagStandard(args.standard)
        )(epc, ons)
    except DerivationError as exc:
        raise _stage_error("derive", exc, EXIT_DERIVE) from exc
    print(address)
    return EXIT_OK


def cmd_parse(args, config: CliConfig) -> int:
    try:
        epc = parse_tag_uri(args.uri)
    except EpcIpv6Error as exc:
        raise _stage_error("parse", exc, EXIT_PARSE) from exc
    fields = {
        "scheme": epc.scheme.value,
        "declared_bits": epc.declared_bits,
        "value": None if epc.value is None else f"{epc.value:#x}",
        "serial_number": epc.serial_number,
        "uri": epc.uri,
    }
    if _output_format(args, config) == "structured":
        print(json.dumps(fields, indent=2))
    else:
        for key, value in fields.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_resolve(args, config: CliConfig) -> int:
    epc = _epc_from_arg(args.uri)
    registry_path = args.registry or config.registry_path
    if registry_path is None:
        raise CliError("usage", "--registry or a config registry_path is required",
                       EXIT_USAGE)
    address = _resolve_epc(registry_path, epc)
    if _output_format(args, config) == "structured":
        print(json.dumps({"ons_ip": str(address)}))
    else:
        print(address)
    return EXIT_OK


def cmd_bench(args, config: CliConfig) -> int:
    registry_path = args.registry or config.registry_path
    if registry_path is None:
        raise CliError("usage", "--registry or a config registry_path is required",
                       EXIT_USAGE)
    try:
        registry = load_registry(registry_path)
    except EpcIpv6Error as exc:
        raise _stage_error("resolve", exc, EXIT_RESOLVE) from exc

    try:
        spec = PopulationSpec(
            scheme=EpcScheme(args.scheme),
            count=args.count,
            seed=args.seed,
            serial_width_bits=args.serial_width_bits,
        )
        population = generate_population(spec)
    except (UnsatisfiableSpecError, ValueError) as exc:
        raise CliError("usage", f"population spec: {exc}", EXIT_USAGE) from exc

    methods = [AddressingMethodId(name) for name in args.methods]
    reports = []
    for method in methods:
        try:
            reports.append(
                evaluate(method, population, registry, salt=args.salt,
                         standard=TagStandard(args.standard))
            )
        except EvaluationError as exc:
            code = EXIT_RESOLVE if exc.stage == "resolve" else EXIT_DERIVE
            raise CliError("bench", str(exc), code) from exc

    if _output_format(args, config) == "structured":
        payload = {
            "population": {
                "scheme": spec.scheme.value,
                "count": spec.count,
                "seed": spec.seed,
                "serial_width_bits": spec.serial_width_bits,
            },
            "reports": [report.to_dict() for report in reports],
        }
        output = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [CSV_HEADER] + [report.csv_row() for report in reports]
        output = "\n".join(lines) + "\n"

    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return EXIT_OK


def _output_format(args, config: CliConfig) -> str:
    return getattr(args, "format", None) or config.output_format


def _salt_arg(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"salt {text!r} is not a number") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"salt {text!r} does not fit 64 bits")
    return value


def _methods_list(text: str) -> list[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("empty method list")
    for name in names:
        if name not in _METHOD_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r}; choose from {', '.join(_METHOD_NAMES)}"
            )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epc-ipv6",
        description="Derive IPv6 addresses for RFID-tagged objects from EPC codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    derive = sub.add_parser("derive", help="derive an address for one EPC")
    derive.add_argument("epc", help="tag URI, or numeric EPC (0x-hex or decimal)")
    derive.add_argument("--ons", help="ONS IPv6 address literal")
    derive.add_argument("--registry", help="registry file to resolve the ONS address")
    derive.add_argument("--method", choices=_METHOD_NAMES,
                        help="addressing method (default from config: hybrid_ons)")
    derive.add_argument("--salt", type=_salt_arg, default=0,
                        help="64-bit salt for xor_pad / or_pad")
    derive.add_argument("--standard", choices=[s.value for s in TagStandard],
                        default="epc", help="input standard for iso_epc")
    derive.set_defaults(handler=cmd_derive)

    parse = sub.add_parser("parse", help="parse a tag URI and print its fields")
    parse.add_argument("uri", help="EPC tag URI")
    parse.add_argument("--format", choices=["text", "structured"])
    parse.set_defaults(handler=cmd_parse)

    resolve_cmd = sub.add_parser("resolve", help="look up the ONS address of an EPC")
    resolve_cmd.add_argument("uri", help="tag URI, or numeric EPC")
    resolve_cmd.add_argument("--registry", help="registry file")
    resolve_cmd.add_argument("--format", choices=["text", "structured"])
    resolve_cmd.set_defaults(handler=cmd_resolve)

    bench = sub.add_parser("bench", help="benchmark methods over a seeded population")
    bench.add_argument("--registry", help="registry file")
    bench.add_argument("--scheme", choices=_GENERATOR_SCHEMES, default="sgtin-96")
    bench.add_argument("--count", type=int, default=1000)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--serial-width-bits", type=int, default=None)
    bench.add_argument("--methods", type=_methods_list, default=_METHOD_NAMES,
                       help="comma-separated method ids (default: all)")
    bench.add_argument("--salt", type=_salt_arg, default=0)
    bench.add_argument("--standard", choices=[s.value for s in TagStandard],
                       default="epc")
    bench.add_argument("--format", choices=["text", "structured"])
    bench.add_argument("--out", help="write the report here instead of stdout")
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config()
        return args.handler(args, config)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.exit_code


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
