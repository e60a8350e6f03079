from .errors import ToricZetaError

__version__ = "0.1.0"
