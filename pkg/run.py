#!/usr/bin/env python3
"""
Point d'entrée de la CLI
"""
import os
import sys

# Add the project root to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

# Load .env file for local development
from dotenv import load_dotenv

load_dotenv()

if __name__ == "__main__":
    from app.main import main

    sys.exit(main())
