"""HTTP service layer: pydantic schemas, handlers, FastAPI app.

The app object lives in ablink.service.app; importing this package alone
stays light so the CLI can use the handlers without the web stack.
"""
