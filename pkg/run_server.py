#!/usr/bin/env python3
"""
Simple script to run the API server.
"""
import sys
import os

# Add current directory to path
script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, script_dir)

if __name__ == "__main__":
    from api.server import app
    from cli.config import default_api_port
    import uvicorn

    port = default_api_port()
    print("Starting Hyper-Bessel API Server...")
    print(f"Port: {port} (HB_API_PORT)")
    uvicorn.run(app, host="0.0.0.0", port=port, log_level="info")
