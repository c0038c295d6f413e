"""phasekeep - phase-coherent gate planning and simulation"""

__version__ = "0.1.0"
