"""Punnett-square inheritance and dominance-based phenotype expression."""

from __future__ import annotations

import random
from typing import Optional

from ..errors import TraitMismatch
from ..world import TraitDefinition

Genotype = dict[str, tuple[str, str]]


def punnett_cross(genotype_a: Optional[Genotype], genotype_b: Optional[Genotype],
                  rng: random.Random) -> Optional[Genotype]:
    """One allele drawn uniformly from each parent, per trait."""
    if genotype_a is None or genotype_b is None:
        return None
    if set(genotype_a) != set(genotype_b):
        raise TraitMismatch("parents do not carry the same trait set")
    offspring: Genotype = {}
    for trait in sorted(genotype_a):
        allele_a = rng.choice(genotype_a[trait])
        allele_b = rng.choice(genotype_b[trait])
        offspring[trait] = (allele_a, allele_b)
    return offspring


def phenotype(genotype: Genotype, trait_def: TraitDefinition) -> str:
    """Heterozygous genotypes express the dominant value."""
    if trait_def.name not in genotype:
        raise TraitMismatch(f"genotype does not cover trait {trait_def.name!r}")
    pair = genotype[trait_def.name]
    if trait_def.dominant_symbol in pair:
        return trait_def.dominant_value
    return trait_def.recessive_value
