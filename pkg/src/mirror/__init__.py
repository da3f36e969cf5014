# verify is imported as src.mirror.verify; it depends on src.geometry, which imports this package.
from .beilinson import WedgeMonomial, build_exterior_category, equivariant_hom, exterior_category, wedge_product

__all__ = ["WedgeMonomial", "build_exterior_category", "equivariant_hom", "exterior_category", "wedge_product"]
