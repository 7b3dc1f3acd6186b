"""Character varieties and A-polynomials of even classical pretzel knots."""
