"""Charged particle on a plane in a uniform transverse magnetic field."""
