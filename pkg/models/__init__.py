"""
Pydantic wire models for the JSON inputs of the kernel.
"""
