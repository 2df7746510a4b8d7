"""Shared fixtures and frozen reference data.

PU_TDS_COUNTS mirrors the bundled histogram so tests catch accidental
edits to the data file.  Expected probabilities/percentages are the
half-up-rounded values of count/30000 (three cells of the historical
table were misprinted; the recomputed values are used throughout).
"""

from __future__ import annotations

import pytest

from pktsample.dataset import ClassHistogram, pu_tds_histogram, synthesize

PU_TDS_COUNTS = (
    ("DHCP", 346),
    ("ARP", 3235),
    ("ICMP", 24),
    ("HTTP", 1252),
    ("TCP", 11735),
    ("UDP", 585),
    ("ICMPv6", 2536),
    ("SSDP", 1571),
    ("NBNS", 642),
    ("MDNS", 118),
    ("LLMNR", 1031),
    ("BROWSER", 193),
    ("TLSv1", 5669),
    ("DB-LSP-DISC", 75),
    ("DHCPv6", 462),
    ("DNS", 4),
    ("HTTP/XML", 1),
    ("IAPP", 1),
    ("IGMP", 337),
    ("IPX RIP", 11),
    ("LLC", 146),
    ("NBIPX", 6),
    ("OCSP", 4),
    ("SSL", 13),
    ("XID", 3),
)

PU_TDS_PROBABILITIES = {
    "DHCP": 0.01153,
    "ARP": 0.10783,
    "ICMP": 0.00080,
    "HTTP": 0.04173,
    "TCP": 0.39117,
    "UDP": 0.01950,
    "ICMPv6": 0.08453,
    "SSDP": 0.05237,
    "NBNS": 0.02140,
    "MDNS": 0.00393,
    "LLMNR": 0.03437,
    "BROWSER": 0.00643,
    "TLSv1": 0.18897,
    "DB-LSP-DISC": 0.00250,
    "DHCPv6": 0.01540,
    "DNS": 0.00013,
    "HTTP/XML": 0.00003,
    "IAPP": 0.00003,
    "IGMP": 0.01123,
    "IPX RIP": 0.00037,
    "LLC": 0.00487,
    "NBIPX": 0.00020,
    "OCSP": 0.00013,
    "SSL": 0.00043,
    "XID": 0.00010,
}


PU_TDS_PERCENTS = {
    "DHCP": 1.153,
    "ARP": 10.783,
    "ICMP": 0.080,
    "HTTP": 4.173,
    "TCP": 39.117,
    "UDP": 1.950,
    "ICMPv6": 8.453,
    "SSDP": 5.237,
    "NBNS": 2.140,
    "MDNS": 0.393,
    "LLMNR": 3.437,
    "BROWSER": 0.643,
    "TLSv1": 18.897,
    "DB-LSP-DISC": 0.250,
    "DHCPv6": 1.540,
    "DNS": 0.013,
    "HTTP/XML": 0.003,
    "IAPP": 0.003,
    "IGMP": 1.123,
    "IPX RIP": 0.037,
    "LLC": 0.487,
    "NBIPX": 0.020,
    "OCSP": 0.013,
    "SSL": 0.043,
    "XID": 0.010,
}


@pytest.fixture(scope="session")
def pu_hist() -> ClassHistogram:
    return pu_tds_histogram()


@pytest.fixture(scope="session")
def pu_dataset(pu_hist):
    """The reference 30000-record dataset: seed 0, shuffled arrangement."""
    return synthesize(pu_hist, seed=0, arrangement="shuffled")


@pytest.fixture(scope="session")
def pu_grouped(pu_hist):
    return synthesize(pu_hist, seed=0, arrangement="grouped")


@pytest.fixture()
def small_hist() -> ClassHistogram:
    return ClassHistogram.from_counts(
        [("TCP", 6), ("ARP", 3), ("ICMP", 2), ("XID", 1)]
    )


@pytest.fixture()
def small_dataset(small_hist):
    return synthesize(small_hist, seed=7, arrangement="shuffled")
