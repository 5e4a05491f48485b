"""
Test package for Casimir Expulsion.

This package contains tests for the cavity model and its front end, including:
- Geometry and kernel tests
- Force, torque and optimum-search tests
- Sweep, catalog and command line tests
"""
