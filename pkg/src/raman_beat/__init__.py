"""
raman-beat: a probe pulse beating with a prepared Raman coherence.
"""
__version__ = "0.1.0"
