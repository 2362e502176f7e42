"""
Used to access version in code
"""

# Do not edit this file manually
__version__ = '0.3.0'
