#!/usr/bin/env python3
"""
Simple script to start the MCSP solver API
"""

import os
import subprocess
import sys


def main():
    root_dir = os.path.dirname(os.path.abspath(__file__))
    port = os.getenv("MCSP_API_PORT", "8001")

    print("🚀 Starting MCSP Solver API...")
    print(f"📁 Project directory: {root_dir}")

    try:
        subprocess.run([
            sys.executable, "-m", "uvicorn",
            "main:app",
            "--host", "0.0.0.0",
            "--port", port,
            "--reload"
        ], cwd=root_dir)
    except KeyboardInterrupt:
        print("\n👋 Shutting down API server...")
    except Exception as e:
        print(f"❌ Error starting server: {e}")


if __name__ == "__main__":
    main()
