"""Canonical 12-lead ordering and reduced-lead subset definitions."""

from __future__ import annotations

from dataclasses import dataclass

# Standard clinical order: limb leads, augmented limb leads, precordial leads.
LEAD_NAMES: tuple[str, ...] = (
    "I", "II", "III", "AVR", "AVL", "AVF",
    "V1", "V2", "V3", "V4", "V5", "V6",
)

N_LEADS = len(LEAD_NAMES)


@dataclass(frozen=True)
class LeadSubset:
    """A named, ordered selection of leads out of the canonical 12.

    ``name`` is the lead count (12, 6, 4, 3 or 2) and ``lead_indices`` are
    strictly increasing indices into :data:`LEAD_NAMES`.
    """

    name: int
    lead_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lead_indices) != self.name:
            raise ValueError(
                f"subset {self.name} must have {self.name} leads, "
                f"got {len(self.lead_indices)}"
            )
        if any(i < 0 or i >= N_LEADS for i in self.lead_indices):
            raise ValueError(f"lead indices out of range 0..11: {self.lead_indices}")
        if any(b <= a for a, b in zip(self.lead_indices, self.lead_indices[1:])):
            raise ValueError(
                f"lead indices must be strictly increasing: {self.lead_indices}"
            )

    @property
    def lead_names(self) -> tuple[str, ...]:
        return tuple(LEAD_NAMES[i] for i in self.lead_indices)

    def __len__(self) -> int:
        return self.name


# Reduced-lead membership follows the PhysioNet reduced-lead convention; the
# mapping is configurable by constructing a custom LeadSubset.
SUBSETS: dict[int, LeadSubset] = {
    12: LeadSubset(12, tuple(range(12))),
    6: LeadSubset(6, (0, 1, 2, 3, 4, 5)),          # I, II, III, aVR, aVL, aVF
    4: LeadSubset(4, (0, 1, 2, 7)),                # I, II, III, V2
    3: LeadSubset(3, (0, 1, 7)),                   # I, II, V2
    2: LeadSubset(2, (0, 1)),                      # I, II
}


def get_subset(name: int) -> LeadSubset:
    """Look up one of the predefined lead subsets by its lead count."""
    try:
        return SUBSETS[name]
    except KeyError:
        raise KeyError(
            f"no predefined subset with {name} leads; choose from {sorted(SUBSETS)}"
        ) from None
