"""Allow running with: python -m ui"""
from .app import main
main()
