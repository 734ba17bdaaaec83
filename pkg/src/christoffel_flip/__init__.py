"""Self-stabilizing local flip rules on discrete threads."""

__version__ = "0.1.0"
