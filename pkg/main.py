"""
Main entry point for the haarboost FastAPI application.
"""
from dotenv import load_dotenv
from fastapi import FastAPI

from app.api.routes import router as api_router
from app.db.storage import init_storage
from app.utils.helpers import configure_logging

# Load environment variables
load_dotenv()
configure_logging()

# Initialize FastAPI app
app = FastAPI(
    title="haarboost",
    description="Discrete AdaBoost over haar-feature stumps with genetic and exhaustive weak learners",
    version="0.1.0",
)

# Include API routes
app.include_router(api_router, prefix="/api")


@app.on_event("startup")
async def startup_storage():
    init_storage()


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=True)
