"""
API package initialization
""" 