from .ainfinity import AInfCategory, CategoryBuilder, Morphism, check_a_infinity, hom_cohomology
from .twisted import TwistedComplex, cone, m_tw, twisted_complex

__all__ = [
    "AInfCategory",
    "CategoryBuilder",
    "Morphism",
    "TwistedComplex",
    "check_a_infinity",
    "cone",
    "hom_cohomology",
    "m_tw",
    "twisted_complex",
]
