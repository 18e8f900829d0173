"""Deterministic isogeny and complex-multiplication testing for elliptic curves
over multiquadratic number fields, driven by effective Chebotarev bounds."""

__version__ = "0.1.0"
