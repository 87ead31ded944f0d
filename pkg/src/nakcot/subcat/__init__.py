"""Subcategory calculus: bitset subcategories, cones, extensions, approximations."""
