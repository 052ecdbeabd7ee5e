import os
from dotenv import load_dotenv

load_dotenv()


class Settings:
    PROJECT_NAME: str = "Langevin Toolkit"
    VERSION: str = "1.0.0"
    THREADS: int = int(os.getenv("LANGEVIN_THREADS", os.cpu_count() or 1))
    OUT_DIR: str = os.getenv("LANGEVIN_OUT_DIR", "generated_files")
    LOG_LEVEL: str = os.getenv("LANGEVIN_LOG_LEVEL", "INFO")
    # Au-delà, l'appariement exact devient trop coûteux
    MAX_ASSIGNMENT: int = int(os.getenv("LANGEVIN_MAX_ASSIGNMENT", "4096"))


settings = Settings()
