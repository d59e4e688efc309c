"""Photinus: phase-isostable reduction and phase-locking analysis for oscillator networks."""
