'''
Two-point Pade approximants to Cauchy transforms on the compact of the
branch set {a, 1/a, b, 1/b} and the models of their strong asymptotics
'''
