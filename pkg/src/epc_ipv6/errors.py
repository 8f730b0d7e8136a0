"""Exception types raised across the package."""


class EpcIpv6Error(Exception):
    """Base class for every error this package raises deliberately."""


# --- tag URIs and the SGTIN-96 codec ---

class TagUriError(EpcIpv6Error):
    """Tag URI text does not match the expected grammar."""


class UnknownSchemeError(TagUriError):
    """Tag URI names a scheme this library does not parse."""


class FieldRangeError(EpcIpv6Error):
    """A numeric field does not fit its digit count or bit width."""


class WrongHeaderError(EpcIpv6Error):
    """An encoded EPC does not start with the header byte of its scheme."""


class InvalidPartitionError(EpcIpv6Error):
    """Partition value outside the 0..6 partition table."""


# --- IPv6 text ---

class Ipv6TextError(EpcIpv6Error):
    """Text is not a valid IPv6 address literal."""


# --- address derivation ---

class DerivationError(EpcIpv6Error):
    """Base class for address-derivation failures."""


class MissingSerialError(DerivationError):
    """The chosen method needs a serial number the EPC does not carry."""


class MissingValueError(DerivationError):
    """The chosen method needs the full numeric EPC value, which is absent."""


class EpcTooWideError(DerivationError):
    """EPC wider than the 64 bits the method can embed."""


class SerialTooWideError(DerivationError):
    """Serial number wider than the method's payload field."""


# --- ONS registry ---

class RegistryError(EpcIpv6Error):
    """Registry file is unreadable or structurally invalid."""


class DuplicatePatternError(RegistryError):
    """Two registry records share the same pattern."""


class NoMatchError(EpcIpv6Error):
    """No registry record matches the EPC."""


# --- benchmark harness ---

class UnsatisfiableSpecError(EpcIpv6Error):
    """Population spec asks for more distinct EPCs than the scheme allows."""


class EvaluationError(EpcIpv6Error):
    """A resolve or derive call failed for one EPC of a population."""

    def __init__(self, stage: str, epc, message: str):
        super().__init__(f"{stage}: {message} (epc={epc!r})")
        self.stage = stage
        self.epc = epc
