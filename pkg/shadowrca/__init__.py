"""
shadowrca: digital-shadow fault diagnosis for publish/subscribe systems
"""
__version__ = "0.1.0"
