"""
Created on 17 Oct 2026

@author: pyscmadetect contributors
"""
