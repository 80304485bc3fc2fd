"""Localization on the stable-pairs moduli space and the closed-form partition functions."""
