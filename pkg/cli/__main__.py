"""Allow running with: python -m cli"""
import sys

from .app import main

sys.exit(main())
