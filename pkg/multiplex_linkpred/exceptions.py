class MultiplexError(Exception):
	pass


class ValidationError(MultiplexError):
	"""
	Bad input data, parameters or configuration
	"""


class ParseError(ValidationError):
	"""
	Malformed edge-list record
	"""

	def __init__(self, message, line_no=None):
		self.line_no = line_no
		if line_no is not None:
			message = f"line {line_no}: {message}"
		super().__init__(message)


class IndexMismatchError(ValidationError):
	"""
	A triad index does not cover the pairs being scored
	"""


class DivergenceError(MultiplexError):
	"""
	Exact Katz requested with beta at or above 1/lambda_max
	"""
