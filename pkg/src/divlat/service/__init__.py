"""HTTP service wrapping the engine, plus the shared command handlers."""
from .app import app, create_app
from .handlers import HANDLERS

__all__ = ["app", "create_app", "HANDLERS"]
