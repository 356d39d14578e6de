// a
/* b */
   // c
