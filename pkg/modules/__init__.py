"""
Package initialization
"""
