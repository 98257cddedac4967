"""Hochschild cohomology of finite-dimensional algebras with exact arithmetic."""
