"""HTTP service wrapping the core package; see .app for the FastAPI app."""

from . import api, schemas  # noqa: F401
