"""Quark-antiquark channel presets and fitted parameter sets."""

from __future__ import annotations

from dataclasses import dataclass

from .potential import PotentialParams

__all__ = ["Channel", "PARAMETER_SETS", "CHANNELS", "resolve_channel", "params_for"]


@dataclass(frozen=True)
class Channel:
    """A flavor pairing: quark 1 is the heavier constituent by convention."""

    label: str
    flavor1: str
    flavor2: str
    param_set_id: str = "vector-default"

    def masses(self, params: PotentialParams):
        m1 = params.quark_masses[self.flavor1]
        m2 = params.quark_masses[self.flavor2]
        if m1 < m2:
            raise ValueError(f"channel {self.label}: expected m1 >= m2, got {m1} < {m2}")
        return m1, m2

    @property
    def equal_flavors(self) -> bool:
        return self.flavor1 == self.flavor2


# The default set fits the vector spectra; the bottomonium set lowers the
# QCD scale and the b mass for the double-b system (smaller coupling).
PARAMETER_SETS = {
    "vector-default": PotentialParams(),
    "bottomonium": PotentialParams().with_overrides(lambda_qcd=0.21, b=5.1242, n_flavors=4),
}

CHANNELS = {
    "D*_u": Channel("D*_u", "c", "u"),
    "D*_d": Channel("D*_d", "c", "d"),
    "D*_s": Channel("D*_s", "c", "s"),
    "B*_u": Channel("B*_u", "b", "u"),
    "B*_d": Channel("B*_d", "b", "d"),
    "B*_s": Channel("B*_s", "b", "s"),
    "B*_c": Channel("B*_c", "b", "c"),
    "ccbar": Channel("ccbar", "c", "c"),
    "bbbar": Channel("bbbar", "b", "b", param_set_id="bottomonium"),
}

_ALIASES = {
    "d*": "D*_u",
    "d*_u": "D*_u",
    "d*_d": "D*_d",
    "d*_s": "D*_s",
    "b*": "B*_u",
    "b*_u": "B*_u",
    "b*_d": "B*_d",
    "b*_s": "B*_s",
    "b*_c": "B*_c",
    "ccbar": "ccbar",
    "c cbar": "ccbar",
    "jpsi": "ccbar",
    "bbbar": "bbbar",
    "b bbar": "bbbar",
    "upsilon": "bbbar",
}


def resolve_channel(name: str) -> Channel:
    key = name.strip()
    if key in CHANNELS:
        return CHANNELS[key]
    alias = _ALIASES.get(key.lower())
    if alias is None:
        known = ", ".join(sorted(CHANNELS))
        raise KeyError(f"unknown channel {name!r}; known channels: {known}")
    return CHANNELS[alias]


def params_for(channel: Channel) -> PotentialParams:
    return PARAMETER_SETS[channel.param_set_id]
