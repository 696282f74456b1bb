from defdist.io.matrix_market import format_matrix_market, read_matrix_market, write_matrix_market
